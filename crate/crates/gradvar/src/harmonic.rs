//! Discrete Dirichlet problem on graph domains.
//!
//! A field is discretely harmonic at an interior vertex when its value
//! equals the mean of its neighbors' values; on a full 4-adjacency grid
//! that is the classic five-point stencil
//!
//! ```text
//! f(i,j) = ( f(i-1,j) + f(i+1,j) + f(i,j-1) + f(i,j+1) ) / 4
//! ```
//!
//! and the graph form handles masked grids whose concavities drop the
//! degree below four. Boundary values are held fixed; interior values are
//! relaxed by Jacobi, Gauss-Seidel, or SOR sweeps, or solved directly by
//! dense Gaussian elimination with partial pivoting ([`exact_solve`]),
//! which doubles as the oracle for the iterative schemes.

use crate::domain::{bfs_distances, BoundaryData, GraphDomain};
use crate::error::{Error, Result};
use crate::gvf::ScalarField;

/// Interior unknown cap for [`exact_solve`]; the dense system is `n x n`.
pub const DIRECT_SOLVE_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Jacobi,
    #[default]
    GaussSeidel,
    Sor,
}

/// Iteration controls for [`solve_dirichlet`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Convergence threshold on the max-norm interior residual.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Relaxation factor for SOR; ignored by the other methods.
    pub omega: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            method: Method::GaussSeidel,
            tolerance: 1e-10,
            max_iterations: 100_000,
            omega: 1.5,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidSolverConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidSolverConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.omega > 0.0 && self.omega < 2.0) {
            return Err(Error::InvalidSolverConfig(format!(
                "omega must lie in (0, 2), got {}",
                self.omega
            )));
        }
        Ok(())
    }
}

/// Solution field plus convergence bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub field: ScalarField,
    pub iterations: usize,
    pub final_residual: f64,
    pub converged: bool,
}

/// Per-vertex deviation from the neighbor mean at interior vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// `(vertex, |f(v) - mean of neighbors|)` for every non-boundary vertex
    /// of degree at least one, in increasing vertex order.
    pub entries: Vec<(usize, f64)>,
    pub max_residual: f64,
}

fn neighbor_mean(domain: &GraphDomain, values: &[f64], v: usize) -> f64 {
    let neighbors = domain.neighbors(v);
    let sum: f64 = neighbors.iter().map(|&u| values[u]).sum();
    sum / neighbors.len() as f64
}

/// Interior vertices (non-boundary) in ascending order, after checking that
/// each has a neighbor and an anchored component.
fn checked_interior(domain: &GraphDomain, boundary: &BoundaryData) -> Result<Vec<usize>> {
    boundary.validate_for(domain)?;
    let n = domain.vertex_count();
    let mut anchored = vec![false; n];
    for v in boundary.vertices() {
        if !anchored[v] {
            for (u, d) in bfs_distances(domain, v).into_iter().enumerate() {
                if d.is_some() {
                    anchored[u] = true;
                }
            }
        }
    }
    let mut interior = Vec::new();
    for (v, &is_anchored) in anchored.iter().enumerate() {
        if boundary.contains(v) {
            continue;
        }
        if domain.degree(v) == 0 {
            return Err(Error::IsolatedInterior(v));
        }
        if !is_anchored {
            return Err(Error::UnanchoredComponent(v));
        }
        interior.push(v);
    }
    Ok(interior)
}

fn max_interior_residual(domain: &GraphDomain, values: &[f64], interior: &[usize]) -> f64 {
    interior
        .iter()
        .map(|&v| (values[v] - neighbor_mean(domain, values, v)).abs())
        .fold(0.0, f64::max)
}

/// Relaxes the Dirichlet problem until the max interior residual drops to
/// the configured tolerance or the iteration budget runs out.
///
/// The interior starts from the mean of the boundary values. Gauss-Seidel
/// and SOR update in ascending vertex order; all three schemes are
/// deterministic functions of their inputs.
pub fn solve_dirichlet(
    domain: &GraphDomain,
    boundary: &BoundaryData,
    config: &SolverConfig,
) -> Result<SolveResult> {
    config.validate()?;
    let interior = checked_interior(domain, boundary)?;

    let boundary_mean =
        boundary.iter().map(|(_, x)| x).sum::<f64>() / boundary.len() as f64;
    let mut values = vec![boundary_mean; domain.vertex_count()];
    for (v, x) in boundary.iter() {
        values[v] = x;
    }

    let mut iterations = 0;
    let mut residual = max_interior_residual(domain, &values, &interior);
    let mut scratch = values.clone();
    while residual > config.tolerance && iterations < config.max_iterations {
        match config.method {
            Method::Jacobi => {
                for &v in &interior {
                    scratch[v] = neighbor_mean(domain, &values, v);
                }
                values.copy_from_slice(&scratch);
            }
            Method::GaussSeidel => {
                for &v in &interior {
                    values[v] = neighbor_mean(domain, &values, v);
                }
            }
            Method::Sor => {
                for &v in &interior {
                    let mean = neighbor_mean(domain, &values, v);
                    values[v] += config.omega * (mean - values[v]);
                }
            }
        }
        iterations += 1;
        residual = max_interior_residual(domain, &values, &interior);
    }

    Ok(SolveResult {
        converged: residual <= config.tolerance,
        final_residual: residual,
        iterations,
        field: ScalarField::new(values),
    })
}

/// Solves the Dirichlet system directly: one dense row
/// `f(v) - mean of neighbors = 0` per interior vertex, boundary values
/// substituted into the right-hand side, Gaussian elimination with
/// partial pivoting.
pub fn exact_solve(domain: &GraphDomain, boundary: &BoundaryData) -> Result<ScalarField> {
    let interior = checked_interior(domain, boundary)?;
    let m = interior.len();
    if m > DIRECT_SOLVE_CAP {
        return Err(Error::DirectSolveTooLarge {
            unknowns: m,
            cap: DIRECT_SOLVE_CAP,
        });
    }

    let mut column = vec![usize::MAX; domain.vertex_count()];
    for (i, &v) in interior.iter().enumerate() {
        column[v] = i;
    }

    let mut a = vec![0.0_f64; m * m];
    let mut rhs = vec![0.0_f64; m];
    for (i, &v) in interior.iter().enumerate() {
        a[i * m + i] = 1.0;
        let inv_deg = 1.0 / domain.degree(v) as f64;
        for &u in domain.neighbors(v) {
            match boundary.get(u) {
                Some(x) => rhs[i] += x * inv_deg,
                None => a[i * m + column[u]] -= inv_deg,
            }
        }
    }

    let solution = solve_dense(&mut a, &mut rhs, m)?;

    let mut values = vec![0.0_f64; domain.vertex_count()];
    for (v, x) in boundary.iter() {
        values[v] = x;
    }
    for (i, &v) in interior.iter().enumerate() {
        values[v] = solution[i];
    }
    Ok(ScalarField::new(values))
}

/// In-place Gaussian elimination with partial pivoting; `a` is row-major
/// `n x n`. Anchored Dirichlet systems are strictly diagonally dominant in
/// the rows touching the boundary and irreducibly dominant elsewhere, so a
/// vanishing pivot means the preconditions were violated.
fn solve_dense(a: &mut [f64], rhs: &mut [f64], n: usize) -> Result<Vec<f64>> {
    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_mag = a[k * n + k].abs();
        for r in k + 1..n {
            let mag = a[r * n + k].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag < f64::EPSILON {
            return Err(Error::SingularSystem {
                row: k,
                pivot: a[pivot_row * n + k],
            });
        }
        if pivot_row != k {
            for c in 0..n {
                a.swap(k * n + c, pivot_row * n + c);
            }
            rhs.swap(k, pivot_row);
        }
        let pivot = a[k * n + k];
        for r in k + 1..n {
            let factor = a[r * n + k] / pivot;
            if factor == 0.0 {
                continue;
            }
            a[r * n + k] = 0.0;
            for c in k + 1..n {
                a[r * n + c] -= factor * a[k * n + c];
            }
            rhs[r] -= factor * rhs[k];
        }
    }
    let mut x = vec![0.0_f64; n];
    for k in (0..n).rev() {
        let mut acc = rhs[k];
        for c in k + 1..n {
            acc -= a[k * n + c] * x[c];
        }
        x[k] = acc / a[k * n + k];
    }
    Ok(x)
}

/// Deviation from the neighbor mean at every non-boundary vertex with at
/// least one neighbor.
pub fn residuals(
    domain: &GraphDomain,
    field: &ScalarField,
    boundary: &BoundaryData,
) -> Result<ResidualReport> {
    field.check_covers(domain)?;
    let mut entries = Vec::new();
    let mut max_residual = 0.0_f64;
    for v in 0..domain.vertex_count() {
        if boundary.contains(v) || domain.degree(v) == 0 {
            continue;
        }
        let r = (field.value(v) - neighbor_mean(domain, field.values(), v)).abs();
        max_residual = max_residual.max(r);
        entries.push((v, r));
    }
    Ok(ResidualReport {
        entries,
        max_residual,
    })
}
