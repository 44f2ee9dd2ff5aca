use thiserror::Error;

/// Errors produced by the bikei library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("not a group: {0}")]
    InvalidGroup(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid diagram code: {0}")]
    Diagram(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size bound {bound} reached")]
    BoundExceeded { bound: usize },

    #[error("engine produced an invalid table: {0}")]
    EngineBug(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
