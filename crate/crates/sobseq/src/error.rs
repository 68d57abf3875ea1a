//! Error wrapper and the process exit-code taxonomy.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sobseq_core::Error),

    #[error("{0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::InvalidInput(msg.into())
    }
}

/// Exit taxonomy: 0 success, 1 validation or hypothesis failure, 2 genuine
/// divergence (series or envelope not summable).
pub fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Core(sobseq_core::Error::SeriesDiverges { .. })
        | CliError::Core(sobseq_core::Error::EnvelopeNotSummable { .. }) => 2,
        _ => 1,
    }
}
