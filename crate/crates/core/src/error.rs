use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degree too large: space of dimension {dim} exceeds cap {cap}")]
    DegreeTooLarge { dim: u128, cap: u128 },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("operation requires characteristic zero, field is {0}; pass an explicit override to proceed")]
    CharacteristicRefused(String),

    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    #[error("short sequence not exact at degree {degree}: {condition}")]
    SesNotExact { degree: usize, condition: String },

    #[error("invalid operator request: {0}")]
    InvalidOperator(String),

    #[error("missing input: {0}")]
    Missing(String),

    /// Violated mathematical invariant. Always a bug, never valid output.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
