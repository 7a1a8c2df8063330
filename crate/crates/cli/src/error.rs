use std::io;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] primlocal::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("stage `{stage}` failed: {source}")]
    Stage { stage: String, source: Box<CliError> },
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    /// 2 for bad input, 3 for anything that went wrong while running.
    pub fn exit_code(&self) -> u8 {
        use primlocal::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::InvalidParameter(_) | E::OutOfRange { .. }) => 2,
            CliError::Stage { source, .. } => source.exit_code(),
            _ => 3,
        }
    }
}
