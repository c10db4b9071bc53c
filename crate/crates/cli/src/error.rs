use std::io;
use std::path::PathBuf;

use asymq_core::ErrorKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] asymq_core::Error),

    #[error("{path}:{line}: {message}")]
    Config {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 2 for bad input, 3 for numerical failure, 4 when the requested regime does not exist.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(e) => match e.kind() {
                ErrorKind::InvalidInput => 2,
                ErrorKind::Numerical => 3,
                ErrorKind::Regime => 4,
            },
            CliError::Config { .. } | CliError::Usage(_) | CliError::Read { .. } | CliError::Write { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
