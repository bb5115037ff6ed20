//! Command-line layer over the drawing library: file formats, the clap
//! surface, and the command bodies. The binary in main.rs only parses
//! arguments and maps errors to exit codes.

use std::fmt;

pub mod commands;
pub mod formats;

/// Failure classes, each tied to a process exit code: 2 for bad input or
/// parameters, 3 for an unmet precondition, 4 for a verification failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Precondition(String),
    Verification(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Precondition(m) => write!(f, "precondition failed: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

/// Library errors raised while computing a drawing or layout are unmet
/// preconditions of the command, not usage mistakes.
pub(crate) fn precondition(e: updraw::Error) -> CliError {
    CliError::Precondition(e.to_string())
}
