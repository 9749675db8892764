use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Rejected configuration or argument.
    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },
    #[error(transparent)]
    Core(#[from] tsmix_core::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> Self {
        CliError::Invalid {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    /// 2 for anything the user can fix in the invocation, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid { .. } | CliError::Json(_) => 2,
            CliError::Core(e) if e.field().is_some() => 2,
            CliError::Core(tsmix_core::Error::Domain(_)) => 2,
            _ => 1,
        }
    }
}
