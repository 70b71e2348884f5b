use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: expected {1}")]
    InvalidDimension(usize, &'static str),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not an element of su({n}): {reason}")]
    InvalidAlgebraElement { n: usize, reason: &'static str },

    #[error("not a special unitary matrix: {0}")]
    NotSpecialUnitary(String),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("not a quantum state: {0}")]
    NotAState(String),

    #[error("expectation value has imaginary residue {0:e}")]
    NonRealExpectation(f64),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("valence {k} exceeds the dense limit {max}")]
    ResourceLimit { k: usize, max: usize },

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
