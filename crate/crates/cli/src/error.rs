use std::path::PathBuf;

use minorforge::error::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("unknown suite `{0}`; expected one of: {1}")]
    UnknownSuite(String, String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 input or parse error, 3 ineligible input or failed precondition,
    /// 4 sampler exhaustion, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) | CliError::UnknownSuite(..) => 2,
            CliError::Core(e) => match e {
                CoreError::Parse { .. }
                | CoreError::UnknownName(_)
                | CoreError::VertexOutOfRange { .. }
                | CoreError::SelfLoop(_) => 2,
                CoreError::Ineligible(_)
                | CoreError::AlphaTooLarge
                | CoreError::NotCertifiable(_)
                | CoreError::InvalidHypotheses(_) => 3,
                CoreError::RejectionExhausted(_) | CoreError::NotEnoughEdges { .. } => 4,
                _ => 1,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
