use thiserror::Error;

/// Errors raised by pattern parsing, argument validation and the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("not a basis: expected column rank {expected}, found {found}")]
    NotABasis { expected: usize, found: usize },

    /// `column` is 1-based, as are all columns in messages.
    #[error("column {column}: projection drops dimension")]
    DegenerateProjection { column: usize },

    #[error("column {column}: not in projected subspace (residual {residual:.3e})")]
    InconsistentObservation { column: usize, residual: f64 },

    #[error("size limit exceeded: {0}")]
    TooLarge(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
