use thiserror::Error;

pub type Result<T> = std::result::Result<T, GptError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GptError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("root is not bracketed: f(a) = {fa}, f(b) = {fb}")]
    NotBracketed { fa: f64, fb: f64 },

    #[error("no self-dualizing inner product available for {0}")]
    NoSelfDualInnerProduct(String),

    #[error("no classical decomposition in this model: {0}")]
    NoClassicalDecomposition(String),

    #[error("entropy not well-defined in this model: {0}")]
    EntropyNotWellDefined(String),

    #[error("point lies outside the state space: {0}")]
    OutsideStateSpace(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("matrix is not doubly stochastic: {0}")]
    NotDoublyStochastic(String),

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("states are not perfectly distinguishable: {0}")]
    NotDistinguishable(String),

    #[error("faces are not orthogonal: {0}")]
    NonOrthogonalFaces(String),

    #[error("repeated eigenvalue {0}; merge degenerate values first")]
    RepeatedValue(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
