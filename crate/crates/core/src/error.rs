use thiserror::Error;

/// Errors raised by the toolkit. Every variant is a recoverable, reportable
/// condition; nothing in the library panics on user input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Schema(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not a chain complex: {0}")]
    NotAComplex(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    /// Exit status used by the command-line front end: schema problems are
    /// 2, everything else is a computation failure (1).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
