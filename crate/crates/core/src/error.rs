use thiserror::Error;

use crate::Symbol;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("arity must be at least {min}, got {found}")]
    InvalidArity { min: usize, found: usize },
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("symbol {symbol} is outside the alphabet of order {order}")]
    SymbolOutOfRange { symbol: Symbol, order: usize },
    #[error("table of arity {arity} over {order} symbols needs {expected} values, got {found}")]
    TableLength {
        arity: usize,
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("table {size} is too large to materialize")]
    TooLarge { size: String },
    #[error("not a quasigroup: {0}")]
    NotQuasigroup(String),
    #[error("tables do not form an orthogonal system: {0}")]
    NotOrthogonal(String),
    #[error("incompatible tables: {0}")]
    Incompatible(String),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("expected {expected} leader symbols, got {found}")]
    LeaderCount { expected: usize, found: usize },
    #[error("invalid linear quasigroup spec: {0}")]
    InvalidSpec(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("enumeration guard exceeded: {0}")]
    SizeGuard(String),
    #[error(
        "leader check failed at block {block}: recovered {recovered:?}, expected {expected:?}"
    )]
    Tampered {
        block: usize,
        recovered: Vec<Symbol>,
        expected: Vec<Symbol>,
    },
    #[error("malformed digit stream: {0}")]
    MalformedDigits(String),
    #[error("malformed ciphertext: {0}")]
    MalformedCiphertext(String),
    #[error("oracle refused query: {0}")]
    OracleRefused(String),
    #[error("inconsistent oracle responses: {0}")]
    InconsistentOracle(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
