use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported formula shape: {0}")]
    Fragment(String),

    #[error("undecided: {0}")]
    Unknown(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
