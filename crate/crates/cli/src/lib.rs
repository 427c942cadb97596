//! Library half of the command-line front end: structure file parsing,
//! output documents, renderers, and the batch property checker. The binary
//! in `main.rs` wires these to subcommands and exit codes.

pub mod check;
pub mod docs;
pub mod render;
pub mod spec;

use std::fmt;

/// Failure classes with their process exit codes: parse 2, validation 3,
/// oracle rejection 4, property failure 5.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(String),
    OracleReject(String),
    Property(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::OracleReject(_) => 4,
            CliError::Property(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::OracleReject(m) => write!(f, "oracle rejection: {m}"),
            CliError::Property(m) => write!(f, "property failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
