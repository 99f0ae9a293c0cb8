use thiserror::Error;

pub type Result<T> = std::result::Result<T, GermError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GermError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// A mathematical hypothesis of an operation does not hold for the input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An identity the engine guarantees was found broken.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl GermError {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            GermError::Parse { .. } | GermError::Io(_) => 2,
            GermError::Invariant(_) => 3,
            _ => 1,
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        GermError::Parse { location: location.into(), message: message.into() }
    }
}

impl From<std::io::Error> for GermError {
    fn from(e: std::io::Error) -> Self {
        GermError::Io(e.to_string())
    }
}
