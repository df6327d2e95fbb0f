use std::fmt;

use boxspec_core::Error as CoreError;
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;
pub const EXIT_UNAVAILABLE: u8 = 4;

/// Printed to standard error as one line of JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointer: Option<String>,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
            pointer: None,
        }
    }

    pub fn at(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
            pointer: Some(pointer.into()),
        }
    }

    pub fn unavailable(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_UNAVAILABLE,
            message: message.into(),
            pointer: None,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("error records serialize")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.pointer {
            Some(p) => write!(f, "{} (at {p})", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Schema { pointer, message } => CliError::at(pointer, message),
            CoreError::Unavailable(u) => CliError::unavailable(u.to_string()),
            other => CliError::usage(other.to_string()),
        }
    }
}

impl CliError {
    /// Prefixes the message, keeping code and pointer.
    pub fn with_prefix(mut self, prefix: &str) -> Self {
        self.message = format!("{prefix}: {}", self.message);
        self
    }
}
