//! Error type shared by every operation in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid dimensions must be positive, got {width}x{height}")]
    ZeroGridDimension { width: usize, height: usize },

    #[error("mask has {got} entries, expected {expected}")]
    MaskSizeMismatch { got: usize, expected: usize },

    #[error("grid has no inside cells")]
    NoInsideCells,

    #[error("vertex {vertex} out of range for a domain with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("field has {got} values but the domain has {expected} vertices")]
    FieldSizeMismatch { got: usize, expected: usize },

    #[error("level step must be positive and finite, got {0}")]
    InvalidLevelStep(f64),

    #[error("boundary data is empty")]
    EmptyBoundary,

    #[error(
        "infeasible boundary data: |f({p}) - f({q})| = {difference} exceeds \
         step {step} times distance {distance}"
    )]
    Infeasible {
        p: usize,
        q: usize,
        difference: f64,
        distance: usize,
        step: f64,
    },

    #[error("component containing vertex {0} has no boundary anchor")]
    UnanchoredComponent(usize),

    #[error("interior vertex {0} has no neighbors")]
    IsolatedInterior(usize),

    #[error("invalid solver configuration: {0}")]
    InvalidSolverConfig(String),

    #[error("direct solve limited to {cap} interior unknowns, got {unknowns}")]
    DirectSolveTooLarge { unknowns: usize, cap: usize },

    #[error("internal error: singular Dirichlet system (pivot {pivot:e} in row {row})")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("path must contain at least one vertex")]
    EmptyPath,

    #[error("vertices {u} and {v} are not adjacent")]
    NotAdjacent { u: usize, v: usize },

    #[error("slope between a vertex and itself is undefined (vertex {0})")]
    SamePair(usize),

    #[error("no path between vertices {p} and {q}")]
    Unreachable { p: usize, q: usize },

    #[error("need at least two boundary vertices, got {0}")]
    TooFewBoundaryVertices(usize),

    #[error("no pair of boundary vertices lies in the same component")]
    NoReachablePair,

    #[error("boundary pair slope sampling needs at least 4 samples, got {0}")]
    TooFewSamples(usize),

    #[error("ratio undefined for a constant function")]
    ConstantFunction,

    #[error("plane coefficients (a, b, c) are all zero")]
    DegeneratePlane,

    #[error("norm exponent must be positive, got {0}")]
    InvalidNormExponent(f64),

    #[error("unknown case name: {0}")]
    UnknownCase(String),
}
