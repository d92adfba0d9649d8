use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} has degree {degree}; every degree must be at least 2")]
    DegreeTooSmall { vertex: usize, degree: usize },

    #[error("degree sum {0} is odd")]
    OddDegreeSum(usize),

    #[error("degree sequence is empty")]
    EmptySequence,

    #[error("degree sequence has no vertex of degree at least 3, so there is no kernel")]
    NoKernel,

    #[error("path lengths do not match the kernel: {0}")]
    LengthMismatch(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("{what}: {got} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("chain is not reversible: detailed balance violated by {0:e}")]
    NotReversible(f64),

    #[error("walk truncated after {0} steps")]
    Truncated(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
