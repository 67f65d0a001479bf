use thiserror::Error;

/// Errors raised by path parsing, enumeration, bijections and counting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A path string contained something other than `u` or `d`.
    #[error("invalid path character {found:?} at position {position} (expected 'u' or 'd')")]
    InvalidPath { position: usize, found: char },

    /// A length/kind combination that admits no path (parity, too short).
    #[error("rejected input: {0}")]
    Rejected(String),

    /// An input violated the domain invariant of an operation.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A counting index outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The brute-force oracle would exceed its configured work cap.
    #[error("resource cap exceeded: {work} scan-steps needed, cap is {cap}")]
    Resource { work: u64, cap: u64 },

    /// Unknown identifier (count id, generating function, table, bijection).
    #[error("unknown identifier: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
