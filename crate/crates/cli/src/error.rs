use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed lines, unknown, duplicate or missing keys.
    #[error("config error: {0}")]
    Config(String),

    /// A value that does not parse as a number with a known unit.
    #[error("bad value for `{key}`: {reason}")]
    Value { key: String, reason: String },

    /// Parsed values violating a physical or structural invariant.
    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 3,
            CliError::Value { .. } => 4,
            CliError::Validation(_) => 5,
            CliError::Io { .. } => 6,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<hom_core::Error> for CliError {
    fn from(e: hom_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
