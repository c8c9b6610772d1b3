//! Gradually varied extensions and discrete harmonic fields on grids and
//! graphs.
//!
//! The crate revolves around one discrete inequality: a field on a graph
//! is *gradually varied* when adjacent values differ by at most one level
//! step. From that it builds
//!
//! * [`domain`] — grid/graph domains, masks, components, the discrete metric;
//! * [`gvf`] — gradual-variation checking, extendability of sparse boundary
//!   data, and the least/greatest extensions (discrete envelopes);
//! * [`harmonic`] — the discrete Dirichlet problem (value = neighbor mean),
//!   solved iteratively or by direct elimination, plus residual reports;
//! * [`analysis`] — geodesic distances, average slopes along paths, the
//!   telescoping identity, and the semi-preserving ratio that compares a
//!   field's largest adjacent jump against its boundary slopes;
//! * [`analytic`] — closed forms for linear, quadratic, and hyperbolic
//!   functions on balls, the sqrt(2) gradient-versus-chord-slope bound,
//!   and plane renormalization;
//! * [`cases`] — a catalog of canned scenarios with frozen expected values
//!   emitting machine-readable reports.
//!
//! The degree-4 cross shows the two sides in one picture: anchoring the
//! four neighbors of a grid cell at `(1, 3, 3, 3)` forces the gradually
//! varied center to 2, while the harmonic center is the neighbor mean 2.5
//! and overshoots the unit step against the value-1 leaf.
//!
//! ```
//! use gradvar::domain::{BoundaryData, GridDomain};
//! use gradvar::gvf::{extend_gvf, ExtendMode};
//! use gradvar::harmonic::exact_solve;
//!
//! let grid = GridDomain::new(3, 3, Some(vec![
//!     false, true, false,
//!     true,  true, true,
//!     false, true, false,
//! ]))?;
//! let gg = grid.to_graph();
//! let leaves = BoundaryData::from_pairs([(0, 3.0), (1, 1.0), (3, 3.0), (4, 3.0)]);
//!
//! let gvf = extend_gvf(&gg.graph, &leaves, 1.0, ExtendMode::Lower)?;
//! assert_eq!(gvf.value(2), 2.0);
//!
//! let harmonic = exact_solve(&gg.graph, &leaves)?;
//! assert_eq!(harmonic.value(2), 2.5);
//! # Ok::<(), gradvar::Error>(())
//! ```

pub mod analysis;
pub mod analytic;
pub mod cases;
pub mod domain;
mod error;
pub mod gvf;
pub mod harmonic;

pub use domain::{connected_components, BoundaryData, Components, GraphDomain, GridDomain, GridGraph};
pub use error::{Error, Result};
pub use gvf::{ExtendMode, ScalarField};
