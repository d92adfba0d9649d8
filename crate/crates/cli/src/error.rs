use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] covertime::Error),

    #[error("{0}")]
    Usage(String),

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 2 invalid input, 3 size guard, 4 truncated walk.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(covertime::Error::SizeLimit { .. }) => 3,
            CliError::Core(covertime::Error::Truncated(_)) => 4,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
