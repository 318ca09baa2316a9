use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A precondition of an operation does not hold (constant map,
    /// non-square-free argument, ...).
    #[error("{0}")]
    Domain(String),

    #[error("unbound variable `{0}`")]
    Unbound(String),

    #[error("input too large: {0}")]
    TooLarge(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
