use std::io;
use std::path::PathBuf;

use jrsp_core::JrspError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot write to stdout: {0}")]
    Stdout(#[source] io::Error),
    #[error(transparent)]
    Core(#[from] JrspError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Every error is a usage-level failure; verification failures are not errors.
    pub fn exit_code(&self) -> i32 {
        crate::EXIT_USAGE
    }
}
