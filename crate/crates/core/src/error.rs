use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHomomorphism(String),

    #[error("no tabulated value for {kind} at {param}")]
    UntabulatedDegree { kind: String, param: String },

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: &'static str,
    },

    #[error("brute-force search limited to order {limit}, got {order}")]
    SizeLimitExceeded { order: String, limit: u64 },

    #[error("no middle term survives the splitting filters (candidates: {candidates})")]
    EmptyAfterFiltering { candidates: String },

    #[error("upstream result is ambiguous: {0}")]
    AmbiguousUpstream(String),

    #[error("table data line {line}: {message}")]
    TableParse { line: usize, message: String },

    #[error("table data line {line}: record has no citation")]
    MissingCitation { line: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, value: impl Into<i64>, range: &'static str) -> Error {
    Error::OutOfRange {
        what,
        value: value.into(),
        range,
    }
}
