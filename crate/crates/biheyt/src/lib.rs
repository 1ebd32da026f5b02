//! File formats, Graphviz output, the verification battery and the
//! command-line front end for [`biheyt_core`].

use std::fmt;

pub use biheyt_core as core;

pub mod battery;
pub mod cli;
pub mod dot;
pub mod format;

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    CheckFailed = 1,
    Usage = 2,
    Budget = 3,
    Inconclusive = 4,
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub msg: String,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError { exit: Exit::Usage, msg: msg.into() }
    }

    pub fn json(e: serde_json::Error) -> Self {
        CliError::input(format!("invalid JSON: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl std::error::Error for CliError {}

impl From<biheyt_core::Error> for CliError {
    fn from(e: biheyt_core::Error) -> Self {
        let exit = if e.is_budget() { Exit::Budget } else { Exit::Usage };
        CliError { exit, msg: e.to_string() }
    }
}

impl From<biheyt_core::rules::ParseError> for CliError {
    fn from(e: biheyt_core::rules::ParseError) -> Self {
        CliError::input(e.to_string())
    }
}
