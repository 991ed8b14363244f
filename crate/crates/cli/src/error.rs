use lgi_core::LgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] LgError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    /// One or more reproduction checks failed; the bundle was still written.
    #[error("{0} reproduction check(s) failed")]
    Failed(usize),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    /// 2 for malformed input, 3 for numeric contract or consistency failures,
    /// 1 for anything environmental.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(LgError::Parse(_)) => 2,
            CliError::Core(_) | CliError::Failed(_) => 3,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}
