use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("integer overflow in {op} at ({row}, {col})")]
    IntegerOverflow {
        op: &'static str,
        row: usize,
        col: usize,
    },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid modulus {0}: must be a prime in [2, 2^32)")]
    InvalidModulus(u64),
    #[error("value {value} is not a valid element of {ring}")]
    ValueOutsideRing { value: i64, ring: String },
    #[error("invalid probability {0}")]
    InvalidProbability(String),
    #[error("duplicate support value {0}")]
    DuplicateSupport(i64),
    #[error("support needs at least 2 values, got {0}")]
    SupportTooSmall(usize),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("AB = C, the false-accept probability is undefined")]
    InstanceActuallyEqual,
    #[error("enumeration needs {needed} vectors, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable name of the error variant, used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::RingMismatch { .. } => "RingMismatch",
            Error::IntegerOverflow { .. } => "IntegerOverflow",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::ValueOutsideRing { .. } => "ValueOutsideRing",
            Error::InvalidProbability(_) => "InvalidProbability",
            Error::DuplicateSupport(_) => "DuplicateSupport",
            Error::SupportTooSmall(_) => "SupportTooSmall",
            Error::ConfigInvalid(_) => "ConfigInvalid",
            Error::InstanceActuallyEqual => "InstanceActuallyEqual",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::Parse { .. } => "ParseError",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
