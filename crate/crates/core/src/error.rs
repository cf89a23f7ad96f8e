use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration (grid size, box length, parameter ranges).
    #[error("configuration error: {0}")]
    Config(String),

    /// Array shapes do not match the grid specification.
    #[error("shape mismatch: expected {expected} samples, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation refused to run because its accuracy contract cannot be
    /// met (under-resolved shell, insufficient quadrature order, ...).
    #[error("refused: {0}")]
    Refused(String),

    /// Numerical abort (NaN/overflow, CFL violation, blow-up indicator).
    #[error("numerical abort: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
