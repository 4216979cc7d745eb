use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid Gelfand-Tsetlin pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation straddles the S_n x S_m split: {0}")]
    Straddles(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("outside the large row-difference regime: {0}")]
    Regime(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
