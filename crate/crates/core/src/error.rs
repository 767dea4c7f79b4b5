use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} exceeds ceiling: {value} > {limit}")]
    Ceiling {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("field error: {0}")]
    Field(String),
    #[error("{task}: retry cap {cap} exhausted (seed {seed})")]
    RetryExhausted {
        task: &'static str,
        seed: u64,
        cap: usize,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input or a violated precondition.
    Input,
    /// A search ceiling or a feasibility limit (field size, retry cap) was hit.
    Feasibility,
    /// A postcondition check failed. Never expected.
    Internal,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn ceiling(what: &'static str, value: usize, limit: usize) -> Self {
        Error::Ceiling { what, value, limit }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Ceiling { .. } | Error::Field(_) | Error::RetryExhausted { .. } => {
                ErrorClass::Feasibility
            }
            Error::Invariant(_) => ErrorClass::Internal,
            Error::Invalid(_) | Error::Parse { .. } | Error::Io(_) | Error::Json(_) => {
                ErrorClass::Input
            }
        }
    }
}
