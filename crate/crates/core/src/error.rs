use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter index {index} is outside an alphabet of size {size}")]
    DomainMismatch { index: i64, size: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("substitution image of letter {0} is empty")]
    EmptyImage(usize),

    #[error("letter index 0 is not a letter")]
    ZeroLetter,

    #[error("substitution is not square ({domain} -> {codomain})")]
    NotSquare { domain: usize, codomain: usize },

    #[error("power exponent must be at least 1")]
    ZeroPower,

    #[error("matrix has a negative entry")]
    NegativeEntry,

    #[error("matrix is not aperiodic")]
    NotAperiodic,

    #[error("polynomial of degree {degree} exceeds the supported degree {max}")]
    UnsupportedDegree { degree: usize, max: usize },

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("polynomial is reducible over the rationals")]
    Reducible,

    #[error("invalid kneading word: {0}")]
    InvalidKneading(String),

    #[error("inconclusive at precision cap: {0}")]
    Inconclusive(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
