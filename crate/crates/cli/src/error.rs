use std::path::PathBuf;

use thiserror::Error;

/// Everything that can end a run, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("input data error: {0}")]
    Input(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{0}")]
    Compute(#[from] xray_hyperbolic::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 0 success, 1 failed check or computation, 2 usage, 3 input data.
    pub fn exit_code(&self) -> u8 {
        use xray_hyperbolic::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) | CliError::Io { .. } | CliError::Csv { .. } => 3,
            CliError::Compute(E::InvalidArgument(_)) => 2,
            CliError::Compute(E::Precondition(_)) => 3,
            CliError::Compute(_) | CliError::Failed(_) => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>) -> impl FnOnce(csv::Error) -> Self {
        let path = path.into();
        move |source| CliError::Csv { path, source }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
