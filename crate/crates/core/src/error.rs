use thiserror::Error;

/// Errors raised by state construction, linear algebra and measure evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index error: {0}")]
    Index(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("shape mismatch: expected {expected}, got {actual}")]
    Shape { expected: String, actual: String },
    #[error("eigenvalue {0:e} below clipping threshold")]
    NegativeEigenvalue(f64),
    #[error("malformed state descriptor: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
