//! CLI error type and its exit-code mapping.

use transgression_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input or configuration; exit code 2.
    #[error("configuration error: {0}")]
    Config(String),
    /// Scenario JSON that violates the schema; exit code 2.
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    /// An identity or scenario claim failed; exit code 1.
    #[error("{0}")]
    Failure(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema { pointer: pointer.into(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Core(CoreError::FlatnessViolation(_)) => 1,
            CliError::Core(CoreError::DegenerateScenario(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
