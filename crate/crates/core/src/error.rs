use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("denominator {0} vanishes after substitution")]
    VanishingDenominator(String),
    #[error("not invertible in normal form")]
    NotInvertible,
    #[error("index out of range: {0}")]
    Index(String),
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
