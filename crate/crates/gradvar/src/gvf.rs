//! Gradually varied functions: checking, feasibility, and extension.
//!
//! A field is gradually varied when adjacent values differ by at most one
//! level step, the graph analogue of a 1-Lipschitz function. Boundary data
//! extends to such a field exactly when every anchor pair satisfies
//! `|f(p) - f(q)| <= step * d(p, q)` with `d` the shortest-path edge count;
//! when it does, the pointwise least and greatest extensions are the
//! discrete McShane/Whitney envelopes
//!
//! ```text
//! L(v) = max over anchors q of  f(q) - step * d(v, q)
//! U(v) = min over anchors q of  f(q) + step * d(v, q)
//! ```
//!
//! and every valid extension lies between them. Each envelope is computed
//! by one multi-source Dijkstra-style sweep with unit edge weights.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::domain::{bfs_distances, BoundaryData, GraphDomain};
use crate::error::{Error, Result};

/// Absolute slack used when comparing real-valued differences against the
/// level step. Integer-valued fields are unaffected: no integer difference
/// falls strictly between `step` and `step + 1e-12` for an integer step.
pub const STRICT_TOLERANCE: f64 = 1e-12;

/// Per-vertex real values over a domain, with the level spacing they are
/// measured against.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    values: Vec<f64>,
    level_step: f64,
}

impl ScalarField {
    /// Field with the default unit level step.
    pub fn new(values: Vec<f64>) -> Self {
        Self {
            values,
            level_step: 1.0,
        }
    }

    pub fn with_step(values: Vec<f64>, level_step: f64) -> Result<Self> {
        check_step(level_step)?;
        Ok(Self { values, level_step })
    }

    pub fn level_step(&self) -> f64 {
        self.level_step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn check_covers(&self, domain: &GraphDomain) -> Result<()> {
        if self.values.len() == domain.vertex_count() {
            Ok(())
        } else {
            Err(Error::FieldSizeMismatch {
                got: self.values.len(),
                expected: domain.vertex_count(),
            })
        }
    }
}

fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidLevelStep(step))
    }
}

/// An adjacent pair whose values differ by more than one level step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub difference: f64,
}

/// Outcome of [`check_gvf`]: the offending edges, if any, and the largest
/// adjacent difference seen anywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
    pub max_adjacent_difference: f64,
}

impl ViolationReport {
    pub fn is_gradually_varied(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every edge of `domain` on which `field` jumps by more than one
/// level step.
pub fn check_gvf(domain: &GraphDomain, field: &ScalarField) -> Result<ViolationReport> {
    field.check_covers(domain)?;
    let step = field.level_step();
    let mut violations = Vec::new();
    let mut max_diff = 0.0_f64;
    for (u, v) in domain.edges() {
        let difference = (field.value(u) - field.value(v)).abs();
        max_diff = max_diff.max(difference);
        if difference > step + STRICT_TOLERANCE {
            violations.push(Violation { u, v, difference });
        }
    }
    Ok(ViolationReport {
        violations,
        max_adjacent_difference: max_diff,
    })
}

/// A boundary pair that rules out any gradually varied extension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityWitness {
    pub p: usize,
    pub q: usize,
    pub difference: f64,
    pub distance: usize,
}

/// Outcome of [`check_feasibility`].
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub witness: Option<FeasibilityWitness>,
}

/// Tests whether `boundary` admits a gradually varied extension: every
/// same-component anchor pair must satisfy `|f(p) - f(q)| <= step * d(p, q)`.
/// Pairs in different components are vacuously fine. The witness, when
/// present, is the first failing pair in lexicographic vertex order.
pub fn check_feasibility(
    domain: &GraphDomain,
    boundary: &BoundaryData,
    level_step: f64,
) -> Result<FeasibilityReport> {
    boundary.validate_for(domain)?;
    check_step(level_step)?;
    let anchors: Vec<(usize, f64)> = boundary.iter().collect();
    for (i, &(p, fp)) in anchors.iter().enumerate() {
        if i + 1 == anchors.len() {
            break;
        }
        let dist = bfs_distances(domain, p);
        for &(q, fq) in &anchors[i + 1..] {
            let Some(d) = dist[q] else { continue };
            let difference = (fq - fp).abs();
            if difference > level_step * d as f64 + STRICT_TOLERANCE {
                return Ok(FeasibilityReport {
                    feasible: false,
                    witness: Some(FeasibilityWitness {
                        p,
                        q,
                        difference,
                        distance: d,
                    }),
                });
            }
        }
    }
    Ok(FeasibilityReport {
        feasible: true,
        witness: None,
    })
}

/// How [`extend_gvf`] picks a value between the two envelopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExtendMode {
    #[default]
    Lower,
    Upper,
    /// Midpoint of the envelopes, rounded half-up onto the level lattice.
    Midpoint,
}

/// f64 ordered by `total_cmp` so it can key the sweep's priority queue.
#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapKey(f64);

impl Eq for HeapKey {}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// One multi-source sweep computing `min over anchors q of (init(q) + step * d(v, q))`
/// for every vertex. Unreached vertices come back as `None`.
fn min_potential_sweep(
    domain: &GraphDomain,
    seeds: impl Iterator<Item = (usize, f64)>,
    step: f64,
) -> Vec<Option<f64>> {
    let n = domain.vertex_count();
    let mut best: Vec<Option<f64>> = vec![None; n];
    let mut heap: BinaryHeap<Reverse<(HeapKey, usize)>> = BinaryHeap::new();
    for (v, potential) in seeds {
        if best[v].is_none_or(|b| potential < b) {
            best[v] = Some(potential);
            heap.push(Reverse((HeapKey(potential), v)));
        }
    }
    while let Some(Reverse((HeapKey(potential), v))) = heap.pop() {
        if best[v] != Some(potential) {
            continue; // stale entry
        }
        for &u in domain.neighbors(v) {
            let candidate = potential + step;
            if best[u].is_none_or(|b| candidate < b) {
                best[u] = Some(candidate);
                heap.push(Reverse((HeapKey(candidate), u)));
            }
        }
    }
    best
}

fn checked_envelope(
    domain: &GraphDomain,
    boundary: &BoundaryData,
    level_step: f64,
    upper: bool,
) -> Result<ScalarField> {
    let report = check_feasibility(domain, boundary, level_step)?;
    if let Some(w) = report.witness {
        return Err(Error::Infeasible {
            p: w.p,
            q: w.q,
            difference: w.difference,
            distance: w.distance,
            step: level_step,
        });
    }
    let sign = if upper { 1.0 } else { -1.0 };
    let swept = min_potential_sweep(
        domain,
        boundary.iter().map(|(v, x)| (v, sign * x)),
        level_step,
    );
    let mut values = Vec::with_capacity(domain.vertex_count());
    for (v, slot) in swept.iter().enumerate() {
        match slot {
            Some(x) => values.push(sign * x),
            None => return Err(Error::UnanchoredComponent(v)),
        }
    }
    // Anchors solve to their own value when the data is feasible; pin them
    // exactly so real-valued inputs near the tolerance edge stay faithful.
    for (v, x) in boundary.iter() {
        values[v] = x;
    }
    ScalarField::with_step(values, level_step)
}

/// Pointwise least gradually varied extension of `boundary`:
/// `L(v) = max over anchors q of (f(q) - step * d(v, q))`.
pub fn lower_envelope(
    domain: &GraphDomain,
    boundary: &BoundaryData,
    level_step: f64,
) -> Result<ScalarField> {
    checked_envelope(domain, boundary, level_step, false)
}

/// Pointwise greatest gradually varied extension of `boundary`:
/// `U(v) = min over anchors q of (f(q) + step * d(v, q))`.
pub fn upper_envelope(
    domain: &GraphDomain,
    boundary: &BoundaryData,
    level_step: f64,
) -> Result<ScalarField> {
    checked_envelope(domain, boundary, level_step, true)
}

/// Gradually varied extension of `boundary` in the requested mode.
///
/// `Midpoint` takes `(L + U) / 2` per vertex, rounded half-up (toward
/// positive infinity) onto the nearest multiple of `level_step`. With
/// anchors on the level lattice the result stays within `[L, U]` and on
/// the lattice; off-lattice anchors are themselves snapped.
pub fn extend_gvf(
    domain: &GraphDomain,
    boundary: &BoundaryData,
    level_step: f64,
    mode: ExtendMode,
) -> Result<ScalarField> {
    match mode {
        ExtendMode::Lower => lower_envelope(domain, boundary, level_step),
        ExtendMode::Upper => upper_envelope(domain, boundary, level_step),
        ExtendMode::Midpoint => {
            let lower = lower_envelope(domain, boundary, level_step)?;
            let upper = upper_envelope(domain, boundary, level_step)?;
            let values = lower
                .values()
                .iter()
                .zip(upper.values())
                .map(|(&l, &u)| snap_half_up((l + u) / 2.0, level_step))
                .collect();
            ScalarField::with_step(values, level_step)
        }
    }
}

/// Nearest multiple of `step`, ties rounded toward positive infinity.
fn snap_half_up(x: f64, step: f64) -> f64 {
    (x / step + 0.5).floor() * step
}
