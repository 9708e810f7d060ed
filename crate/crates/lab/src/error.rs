use std::io;

use thiserror::Error;

/// Failures of the lab front end, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
    #[error(transparent)]
    Core(#[from] dynamo_lab_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl LabError {
    pub fn exit_code(&self) -> u8 {
        2
    }

    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        LabError::Io { path: path.into(), source }
    }
}

pub type LabResult<T> = Result<T, LabError>;
