use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("component is not periodic: {0}")]
    NonPeriodic(String),

    #[error("invalid cyclic extension: {0}")]
    InvalidExtension(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("{divisor} does not divide {n}")]
    InvalidDivisor { n: u64, divisor: u64 },

    #[error("entries are not all real (+1 or -1); exponents {0:?}")]
    NonRealEntries(Vec<String>),

    #[error("Weyl group of {name} has {order} elements; {hint}")]
    TooLarge {
        name: String,
        order: String,
        hint: &'static str,
    },

    #[error("unsupported family {0}: no matrix model for its normalizer")]
    UnsupportedFamily(String),

    #[error("invalid Weyl group element: {0}")]
    InvalidElement(String),

    #[error("invalid root system type: {0}")]
    InvalidType(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
