use thiserror::Error;

/// Errors reported by the norm solvers and algebra constructors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("exponent {0} is not supported by this operation: {1}")]
    UnsupportedExponent(String, &'static str),

    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("circle map is not strictly monotone (worst backward step {0:.3e})")]
    NonMonotone(f64),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
