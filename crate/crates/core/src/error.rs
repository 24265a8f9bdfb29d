use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps [`Error::Usage`] and [`Error::Parse`] to exit code 2 and
/// everything else to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A mathematical precondition was violated (pole, negative sqrt, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The parameters hit a degenerate case of an expansion: the requested
    /// exponentially small part vanishes identically or is undefined.
    #[error("degenerate case: {0}")]
    Degenerate(String),

    /// The working precision cannot absorb the estimated cancellation.
    #[error("insufficient precision: need at least {needed} bits, have {available}")]
    Precision { needed: u32, available: u32 },

    /// An internal consistency check failed. Indicates a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// The caller passed arguments that make no sense for the operation.
    #[error("usage error: {0}")]
    Usage(String),

    /// A decimal or rational literal could not be parsed.
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
