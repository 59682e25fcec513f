use std::io;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cbf_core::Error),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("input holds no codewords")]
    NoWords,

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const GUARD: u8 = 3;
    pub const NOT_APPLICABLE: u8 = 4;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(cbf_core::Error::GuardExceeded { .. }) => exit::GUARD,
            CliError::Core(cbf_core::Error::NotApplicable(_)) => exit::NOT_APPLICABLE,
            _ => exit::USAGE,
        }
    }
}
