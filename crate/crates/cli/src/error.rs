use std::path::{Path, PathBuf};

use quietvoyage_core::Error as CoreError;

/// Failure categories surfaced by the command-line driver.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot parse {}: {reason}", path.display())]
    Parse { path: PathBuf, reason: String },

    #[error(transparent)]
    Core(#[from] CoreError),

    /// A check ran to completion and did not pass.
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type AppResult<T> = Result<T, AppError>;

impl AppError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn parse(path: &Path, reason: impl std::fmt::Display) -> Self {
        AppError::Parse {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        }
    }

    /// 1 validation or failed check, 2 usage or I/O, 3 infeasible or numeric.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) | AppError::Io { .. } => 2,
            AppError::Parse { .. } | AppError::CheckFailed(_) => 1,
            AppError::Core(e) => match e {
                CoreError::Infeasible(_) | CoreError::DegenerateNormalization(_) => 3,
                CoreError::Invalid { .. } | CoreError::OutOfCoverage { .. } | CoreError::DimensionMismatch { .. } => 1,
            },
        }
    }

    pub fn category(&self) -> &'static str {
        match self.exit_code() {
            1 => match self {
                AppError::CheckFailed(_) => "check",
                AppError::Parse { .. } => "parse",
                _ => "validation",
            },
            2 => match self {
                AppError::Io { .. } => "io",
                _ => "usage",
            },
            _ => match self {
                AppError::Core(CoreError::Infeasible(_)) => "infeasible",
                _ => "numeric",
            },
        }
    }
}
