use thiserror::Error;

/// Errors raised by the algebra kernel and the procedures built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid substitution: replacement for z{var} involves z{var}")]
    InvalidSubstitution { var: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("matrix is not of full row rank (rank {rank}, rows {rows})")]
    NotFullRank { rank: usize, rows: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("factorization incomplete: {0}")]
    FactorizationIncomplete(String),

    #[error("matrix is not in the class: {0}")]
    NotInClass(String),

    #[error("malformed divisor: {0}")]
    MalformedDivisor(String),

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("invalid input: {0}")]
    Input(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
