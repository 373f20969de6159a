use thiserror::Error;

/// Errors raised by the library. Indices carried in variants are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {0} is outside the supported range [2, 2^31)")]
    ModulusOutOfRange(u64),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("principal block on {0} is singular")]
    SingularBlock(String),

    #[error("scaling by zero")]
    ZeroScalar,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("entry ({row}, {col}) = {value} is not in {{0, 1, -1}}")]
    EntryOutOfRange { row: usize, col: usize, value: String },

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("({k}, {l}) is not a violating pair: {reason}")]
    NotAViolation { k: usize, l: usize, reason: String },

    #[error("exhaustive search over n = {n} exceeds the limit {limit}; use sampling")]
    TooLarge { n: usize, limit: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal self-check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
