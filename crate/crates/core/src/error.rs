use thiserror::Error;

/// Errors produced by norm evaluation, parameter solvers, and samplers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Vector and weight profile lengths disagree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A parameter set fails its family's validity conditions.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A numerical procedure failed (singular system, no root passing
    /// the residual check, ...). Should not occur for in-contract inputs.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
