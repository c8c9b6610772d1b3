//! The JSON report document every command can emit.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Versioned report wrapper: command echo, digest of the main input file,
/// command-specific results, and the process exit status.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub results: serde_json::Value,
    pub exit_status: i32,
}

impl ReportDocument {
    pub fn new(
        command: Vec<String>,
        input_bytes: Option<&[u8]>,
        results: serde_json::Value,
        exit_status: i32,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            input_digest: input_bytes.map(digest),
            results,
            exit_status,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

fn digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let mut out = String::from("sha256:");
    for byte in hasher.finalize() {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}
