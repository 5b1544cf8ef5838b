use thiserror::Error;

/// Errors raised by the tower engine and its supporting algebra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid simplicial data: {0}")]
    Invalid(String),

    #[error("square does not commute: {0}")]
    Commutativity(String),

    #[error("generator subset is not closed under faces: {0}")]
    NotFaceClosed(String),

    #[error("search budget of {budget} partial assignments exceeded while {context}")]
    BudgetExceeded { budget: u64, context: String },

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
