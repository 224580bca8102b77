//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid character: residual of {residual_terms} weights after peeling ({detail})")]
    InvalidCharacter {
        residual_terms: usize,
        detail: String,
    },

    #[error("table {table} row {row}: {message}")]
    Table {
        table: String,
        row: String,
        message: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error at {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unsupported(msg.into()))
}
