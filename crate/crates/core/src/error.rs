use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different fields: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("operands live over different variable tables: {0} vs {1}")]
    TableMismatch(String, String),
    #[error("exponent range exceeded: {0}")]
    Range(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
