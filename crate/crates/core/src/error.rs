use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Contract` marks a violated internal precondition (an engine bug, not bad
/// user input); everything else is attributable to configuration or data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("agent id {id} out of range for a network of {n} agents")]
    InvalidAgent { id: u32, n: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("parse error in {path}{}: {msg}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Parse {
        path: PathBuf,
        line: Option<u64>,
        msg: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }
}
