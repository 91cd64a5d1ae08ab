use thiserror::Error;

use crate::io::grammar::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("resource limit exceeded: {what} would need {needed}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("degree {requested} is out of range for truncation {truncation} (highest trusted degree is {max})")]
    OutOfTruncationRange {
        requested: usize,
        truncation: usize,
        max: isize,
    },

    #[error("simplicial set is not reduced: dimension 0 has {0} elements")]
    NotReduced(usize),

    #[error("directed system did not stabilise within a window of {window} transitions")]
    Unstabilized { window: usize },

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("hypothesis failed: {witness}")]
    HypothesisFailed { witness: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Invalid(_) | Error::Json(_) | Error::Io(_) => 2,
            Error::ContextMismatch(_) | Error::NotReduced(_) => 2,
            Error::HypothesisFailed { .. } => 3,
            Error::ResourceLimit { .. } | Error::Overflow(_) => 4,
            Error::OutOfTruncationRange { .. } | Error::Unstabilized { .. } => 4,
            Error::MissingData(_) | Error::Unsupported(_) => 5,
        }
    }
}
