//! Errors surfaced by the command-line front end.
//!
//! Every variant is a malformed-input condition and maps to exit code 2;
//! validation failures of well-formed input are reported in the command
//! output and exit with code 1 instead.

use std::fmt;
use std::io;
use std::path::PathBuf;

/// A malformed-input or I/O failure.
#[derive(Debug)]
pub enum CliError {
    /// Reading an input file failed.
    Io {
        /// The file being read.
        path: PathBuf,
        /// The underlying error.
        source: io::Error,
    },
    /// The input is not valid JSON or does not match the expected shape.
    Json(serde_json::Error),
    /// A value is syntactically valid but out of range or inconsistent.
    Malformed(String),
    /// Writing CSV output failed.
    Csv(csv::Error),
    /// The worker pool could not be built.
    ThreadPool(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "cannot read {}: {source}", path.display()),
            CliError::Json(e) => write!(f, "malformed JSON: {e}"),
            CliError::Malformed(msg) => write!(f, "malformed input: {msg}"),
            CliError::Csv(e) => write!(f, "CSV output failed: {e}"),
            CliError::ThreadPool(msg) => write!(f, "cannot start worker pool: {msg}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io { source, .. } => Some(source),
            CliError::Json(e) => Some(e),
            CliError::Csv(e) => Some(e),
            CliError::Malformed(_) | CliError::ThreadPool(_) => None,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

/// Shorthand for a [`CliError::Malformed`] built from any displayable value.
pub(crate) fn malformed(msg: impl fmt::Display) -> CliError {
    CliError::Malformed(msg.to_string())
}
