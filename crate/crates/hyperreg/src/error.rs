use thiserror::Error;

/// Library-wide error type.
///
/// The variants separate the error classes callers are expected to branch on:
/// malformed structures, domain violations of an operation's precondition,
/// requests that exceed an exhaustive-search cap, and wire-format failures.
#[derive(Debug, Error)]
pub enum Error {
    /// A structurally invalid object (same-class edge, out-of-range vertex,
    /// closure violation, slice overlap, ...).
    #[error("structural error: {0}")]
    Structure(String),

    /// Inputs outside an operation's domain (empty subset density, pattern
    /// not induced, missing per-edge density, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive mode was requested above its cap; the caller must
    /// switch to a sampled strategy.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// Wire-format failure, anchored to the offending line.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
