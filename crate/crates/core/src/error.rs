use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("weight {0} is not in the positive cone")]
    NotInPositiveCone(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator is not a product of linear factors: {0}")]
    NonlinearDenominator(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("rewrite budget of {0} steps exceeded")]
    RewriteBudget(usize),
    #[error("element of nonzero weight cannot be central")]
    NonzeroWeight,
    #[error("element is not central")]
    NotCentral,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
