use std::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed text input. `line` is 1-based; 0 means "whole input".
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Structurally invalid input (out-of-range index, clashing domains, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A search was asked to go beyond its configured size cap.
    #[error("resource cap exceeded: {what} is {requested}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// A proven statement failed on a concrete instance whose hypotheses
    /// were verified. Indicates a bug (or a counterexample).
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// The hypotheses of a construction do not hold; the message lists
    /// every failed item.
    #[error("hypotheses not met:\n{0}")]
    Hypotheses(String),

    /// A CoverGame move that the rules do not allow.
    #[error("game rule violated: {0}")]
    GameRule(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            message: message.to_string(),
        }
    }

    pub(crate) fn invalid(message: impl fmt::Display) -> Self {
        Error::Invalid(message.to_string())
    }

    pub(crate) fn inconsistency(message: impl fmt::Display) -> Self {
        Error::Inconsistency(message.to_string())
    }

    pub(crate) fn cap(what: &'static str, requested: usize, cap: usize) -> Self {
        Error::ResourceCap {
            what,
            requested,
            cap,
        }
    }
}
