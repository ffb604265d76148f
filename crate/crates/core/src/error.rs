use thiserror::Error;

/// Errors raised by the algorithms in this crate.
///
/// Mathematical "no" answers (an irrelevant pair, unequal supports) are
/// ordinary return values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("invalid symbol table: {0}")]
    SymbolTable(String),
    #[error("non-positive dimension: {0}")]
    NonPositive(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("parameter is not discrete: {0}")]
    NotDiscrete(String),
    #[error("pair is not relevant: {0}")]
    NotRelevant(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("missing sign table entry: {0}")]
    MissingSign(String),
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("enumeration budget of {0} exceeded")]
    Budget(u64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
