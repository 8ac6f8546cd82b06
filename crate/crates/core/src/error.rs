use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("dimension {n} exceeds dense cap {cap}; use the iterative Fiedler solver")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("no convergence after {iterations} iterations (best residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("step dt = {dt} violates stability bound dt <= 0.1 / max_degree = {bound}")]
    StepTooLarge { dt: f64, bound: f64 },

    #[error("lambda2 is degenerate (gap {gap:e}); Fiedler vector is not unique")]
    Degenerate { gap: f64 },

    #[error("initial state is orthogonal to the Fiedler vector (|<u0, e2>| = {0:e})")]
    OrthogonalInitialState(f64),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix is not positive definite (pivot {pivot:e} at step {step})")]
    NotPositiveDefinite { step: usize, pivot: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
