use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// A check ran and failed, or an unexpected internal error.
    pub const FAILURE: i32 = 1;
    pub const NOT_CONVERGED: i32 = 2;
    pub const INVALID_CONFIG: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {field}: {message}")]
    Config { field: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("solver failed: {0}")]
    Solver(#[source] wrm_core::Error),

    #[error(transparent)]
    Core(#[from] wrm_core::Error),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),

    #[error("cannot encode output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl std::fmt::Display) -> Self {
        let message = message.to_string();
        let message = message
            .strip_prefix("invalid argument: ")
            .map(str::to_string)
            .unwrap_or(message);
        CliError::Config {
            field: field.into(),
            message,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Usage(_) => exit::INVALID_CONFIG,
            CliError::Solver(_) => exit::NOT_CONVERGED,
            CliError::Core(_) | CliError::Io(_) | CliError::Json(_) => exit::FAILURE,
        }
    }
}
