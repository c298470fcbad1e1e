use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Usage(String),
    #[error("angle count mismatch: expected 2^n_beta = {expected} angles, found {found}")]
    AngleCount { expected: usize, found: usize },
    #[error("qubit cap exceeded: {count} qubits requested, cap is {cap}")]
    QubitCap { count: usize, cap: usize },
    #[error("malformed input: {0}")]
    Format(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Synthesis(oraclemux::Error),
}

impl From<oraclemux::Error> for CliError {
    fn from(e: oraclemux::Error) -> Self {
        match e {
            oraclemux::Error::AngleCount { expected, found } => {
                CliError::AngleCount { expected, found }
            }
            oraclemux::Error::QubitCap { count, cap } => CliError::QubitCap { count, cap },
            other => CliError::Synthesis(other),
        }
    }
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
