use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid Dirichlet target: {0}")]
    InvalidTarget(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("premise violated: {0}")]
    Premise(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("window fully censored for horizon window [{lo}, {hi}]")]
    WindowCensored { lo: u32, hi: u32 },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// Offsets a parse position by `by` bytes, for errors raised on substrings.
    pub(crate) fn shift(self, by: usize) -> Self {
        match self {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
            other => other,
        }
    }

    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted(_) | Error::WindowCensored { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
