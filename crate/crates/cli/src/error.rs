//! CLI error classification and exit codes.
//!
//! Exit codes: 0 success, 2 usage error, 3 data or parse error,
//! 4 numerical error (rank deficiency, identity violation, unbounded
//! diagnostics).

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Invalid flag combination or argument value.
    Usage(String),
    /// Missing, malformed, or ill-shaped input data.
    Data(String),
    /// The numerics refused the problem.
    Numerical(residlm_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Data(msg) => write!(f, "data error: {msg}"),
            CliError::Numerical(e) => write!(f, "numerical error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<residlm_core::Error> for CliError {
    fn from(e: residlm_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e)
        } else {
            CliError::Data(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
