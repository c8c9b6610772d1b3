//! Command-line front-end: parse grid/graph problems, dispatch the library
//! operations, and emit field CSVs, JSON reports, and PGM heatmaps.
//!
//! Exit codes: 0 on success (all requested checks pass), 1 when a requested
//! check finds violations or assertion failures (including infeasible
//! boundary data and non-converged solves), 2 on input or usage errors.

mod formats;
mod heatmap;
mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use formats::{field_to_csv, parse_field_csv, parse_graph_json, parse_grid_csv, ProblemInput};
use gradvar::analysis::{average_slope, semi_preserving_ratio};
use gradvar::cases::{list_cases, run_case, run_all, CaseReport};
use gradvar::gvf::{check_feasibility, check_gvf, extend_gvf, ExtendMode};
use gradvar::harmonic::{exact_solve, solve_dirichlet, Method, SolverConfig};
use gradvar::Error;
use report::ReportDocument;

/// Input or usage problem; always maps to exit code 2.
#[derive(Debug)]
pub struct CliError {
    message: String,
}

impl CliError {
    pub fn input(message: String) -> Self {
        Self { message }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Parser)]
#[command(
    name = "gradvar",
    version,
    about = "Gradually varied extensions, discrete Dirichlet solves, and slope analysis on grid and graph domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// Pick by file extension (.json is graph JSON, anything else grid CSV)
    Auto,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Lower,
    Upper,
    Midpoint,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Jacobi,
    GaussSeidel,
    Sor,
}

#[derive(Subcommand)]
enum Command {
    /// Check gradual variation of a complete field, or extendability of
    /// partial boundary data
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        /// Level step the adjacent differences are measured against
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Extend boundary data to a gradually varied field
    Extend {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Lower)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        /// Write the extended field as CSV
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write a PGM (P2) heatmap of the extended field
        #[arg(long)]
        heatmap: Option<PathBuf>,
    },
    /// Solve the discrete Dirichlet problem on the anchored input
    Harmonic {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long, value_enum, default_value_t = MethodArg::GaussSeidel)]
        method: MethodArg,
        /// Max-norm residual threshold for convergence
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        /// SOR relaxation factor
        #[arg(long, default_value_t = 1.5)]
        omega: f64,
        /// Solve directly by Gaussian elimination instead of iterating
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        heatmap: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Average slope between two vertices of a complete field
    Slope {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        /// Field CSV covering the input domain
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Semi-preserving ratio of a complete field against the anchored set
    Semipreserve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run a named verification case, or all of them
    Verify {
        /// Case name or "all"; see `verify list`
        case: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

fn parse_problem(path: &Path, format: FormatArg, step: f64) -> Result<ProblemInput, CliError> {
    let text = read_input(path)?;
    let format = match format {
        FormatArg::Auto => {
            if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
                FormatArg::Json
            } else {
                FormatArg::Csv
            }
        }
        other => other,
    };
    match format {
        FormatArg::Json => parse_graph_json(&text, step),
        _ => parse_grid_csv(&text, step),
    }
}

/// Maps library errors on already-parsed data to exit-2 input errors.
fn data_error(e: Error) -> CliError {
    CliError::input(e.to_string())
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn maybe_write_report(
    path: &Option<PathBuf>,
    input_bytes: Option<&[u8]>,
    results: serde_json::Value,
    exit_status: i32,
) -> Result<(), CliError> {
    if let Some(path) = path {
        let doc = ReportDocument::new(command_echo(), input_bytes, results, exit_status);
        write_output(path, &doc.to_json())?;
    }
    Ok(())
}

fn run() -> Result<u8, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { input, format, step, report } => {
            if !(step > 0.0 && step.is_finite()) {
                return Err(CliError::input(format!("step must be positive, got {step}")));
            }
            let problem = parse_problem(&input, format, step)?;
            let input_bytes = std::fs::read(&input).ok();
            let (results, code) = if let Some(field) = &problem.full_field {
                let outcome = check_gvf(&problem.graph, field).map_err(data_error)?;
                for v in &outcome.violations {
                    println!(
                        "violation: |f({}) - f({})| = {} > step {step}",
                        v.u, v.v, v.difference
                    );
                }
                println!(
                    "gvf check: {} ({} violations, max adjacent difference {})",
                    if outcome.is_gradually_varied() { "pass" } else { "fail" },
                    outcome.violations.len(),
                    outcome.max_adjacent_difference
                );
                let code = if outcome.is_gradually_varied() { 0 } else { 1 };
                (
                    json!({
                        "mode": "gvf",
                        "level_step": step,
                        "gradually_varied": outcome.is_gradually_varied(),
                        "max_adjacent_difference": outcome.max_adjacent_difference,
                        "violations": outcome.violations.iter().map(|v| json!({
                            "u": v.u, "v": v.v, "difference": v.difference,
                        })).collect::<Vec<_>>(),
                    }),
                    code,
                )
            } else {
                let outcome = check_feasibility(&problem.graph, &problem.boundary, step)
                    .map_err(data_error)?;
                match &outcome.witness {
                    Some(w) => println!(
                        "infeasible: |f({}) - f({})| = {} > step {step} * distance {}",
                        w.p, w.q, w.difference, w.distance
                    ),
                    None => println!(
                        "feasibility check: pass ({} anchors)",
                        problem.boundary.len()
                    ),
                }
                let code = if outcome.feasible { 0 } else { 1 };
                (
                    json!({
                        "mode": "feasibility",
                        "level_step": step,
                        "feasible": outcome.feasible,
                        "witness": outcome.witness.map(|w| json!({
                            "p": w.p, "q": w.q,
                            "difference": w.difference, "distance": w.distance,
                        })),
                    }),
                    code,
                )
            };
            maybe_write_report(&report, input_bytes.as_deref(), results, code as i32)?;
            Ok(code)
        }

        Command::Extend { input, format, mode, step, output, heatmap } => {
            let problem = parse_problem(&input, format, step)?;
            let mode = match mode {
                ModeArg::Lower => ExtendMode::Lower,
                ModeArg::Upper => ExtendMode::Upper,
                ModeArg::Midpoint => ExtendMode::Midpoint,
            };
            match extend_gvf(&problem.graph, &problem.boundary, step, mode) {
                Ok(field) => {
                    println!(
                        "extended {} vertices ({mode:?}, step {step}); values in [{}, {}]",
                        field.len(),
                        field.values().iter().copied().fold(f64::INFINITY, f64::min),
                        field.values().iter().copied().fold(f64::NEG_INFINITY, f64::max),
                    );
                    if let Some(path) = &output {
                        write_output(path, &field_to_csv(&field, problem.layout.as_ref()))?;
                    }
                    if let Some(path) = &heatmap {
                        write_output(path, &heatmap::render(&field, problem.layout.as_ref()))?;
                    }
                    Ok(0)
                }
                Err(Error::Infeasible { p, q, difference, distance, step }) => {
                    println!(
                        "infeasible: |f({p}) - f({q})| = {difference} > step {step} * distance {distance}"
                    );
                    Ok(1)
                }
                Err(e) => Err(data_error(e)),
            }
        }

        Command::Harmonic {
            input, format, method, tol, max_iter, omega, exact, output, heatmap, report,
        } => {
            let problem = parse_problem(&input, format, 1.0)?;
            let input_bytes = std::fs::read(&input).ok();
            let (field, results, code) = if exact {
                let field = exact_solve(&problem.graph, &problem.boundary).map_err(data_error)?;
                println!("direct solve: {} vertices", field.len());
                (field, json!({ "method": "exact", "converged": true }), 0u8)
            } else {
                let config = SolverConfig {
                    method: match method {
                        MethodArg::Jacobi => Method::Jacobi,
                        MethodArg::GaussSeidel => Method::GaussSeidel,
                        MethodArg::Sor => Method::Sor,
                    },
                    tolerance: tol,
                    max_iterations: max_iter,
                    omega,
                };
                let solve =
                    solve_dirichlet(&problem.graph, &problem.boundary, &config).map_err(data_error)?;
                println!(
                    "{method:?}: {} iterations, final residual {:e}{}",
                    solve.iterations,
                    solve.final_residual,
                    if solve.converged { "" } else { " (NOT converged)" },
                );
                let code = if solve.converged { 0 } else { 1 };
                let results = json!({
                    "method": format!("{method:?}"),
                    "converged": solve.converged,
                    "iterations": solve.iterations,
                    "final_residual": solve.final_residual,
                });
                (solve.field, results, code)
            };
            if let Some(path) = &output {
                write_output(path, &field_to_csv(&field, problem.layout.as_ref()))?;
            }
            if let Some(path) = &heatmap {
                write_output(path, &heatmap::render(&field, problem.layout.as_ref()))?;
            }
            maybe_write_report(&report, input_bytes.as_deref(), results, code as i32)?;
            Ok(code)
        }

        Command::Slope { input, format, field, from, to } => {
            let problem = parse_problem(&input, format, 1.0)?;
            let field_text = read_input(&field)?;
            let field =
                parse_field_csv(&field_text, &problem.graph, problem.layout.as_ref(), 1.0)?;
            let slope =
                average_slope(&field, &problem.graph, from, to).map_err(data_error)?;
            println!(
                "slope({from}, {to}) = {} over geodesic length {} (path {:?})",
                slope.average_slope,
                slope.geodesic_length,
                slope.witness_path.vertices(),
            );
            Ok(0)
        }

        Command::Semipreserve { input, format, field, report } => {
            let problem = parse_problem(&input, format, 1.0)?;
            let input_bytes = std::fs::read(&input).ok();
            let field_text = read_input(&field)?;
            let field =
                parse_field_csv(&field_text, &problem.graph, problem.layout.as_ref(), 1.0)?;
            let boundary_set: Vec<usize> = problem.boundary.vertices().collect();
            let outcome = semi_preserving_ratio(&field, &problem.graph, &boundary_set)
                .map_err(data_error)?;
            match outcome.ratio {
                Some(ratio) => println!(
                    "semi-preserving ratio = {ratio} (max adjacent difference {} / max boundary slope {})",
                    outcome.numerator, outcome.denominator
                ),
                None => println!(
                    "semi-preserving ratio degenerate: constant boundary values (max adjacent difference {})",
                    outcome.numerator
                ),
            }
            let results = json!({
                "numerator": outcome.numerator,
                "witness_edge": outcome.witness_edge.map(|(u, v)| json!([u, v])),
                "denominator": outcome.denominator,
                "witness_pair": [outcome.witness_pair.0, outcome.witness_pair.1],
                "ratio": outcome.ratio,
            });
            maybe_write_report(&report, input_bytes.as_deref(), results, 0)?;
            Ok(0)
        }

        Command::Verify { case, report } => {
            let reports: Vec<CaseReport> = if case == "all" {
                run_all()
            } else if case == "list" {
                for name in list_cases() {
                    println!("{name}");
                }
                return Ok(0);
            } else {
                vec![run_case(&case).map_err(data_error)?]
            };
            let mut all_pass = true;
            for r in &reports {
                let failed: Vec<&str> = r
                    .assertions
                    .iter()
                    .filter(|a| !a.pass)
                    .map(|a| a.name.as_str())
                    .collect();
                if r.pass {
                    println!("case {}: PASS ({} assertions)", r.case_name, r.assertions.len());
                } else {
                    println!("case {}: FAIL ({})", r.case_name, failed.join(", "));
                }
                all_pass &= r.pass;
            }
            let code = if all_pass { 0u8 } else { 1 };
            let results = json!({
                "cases": reports,
                "all_pass": all_pass,
            });
            maybe_write_report(&report, None, results, code as i32)?;
            Ok(code)
        }
    }
}
