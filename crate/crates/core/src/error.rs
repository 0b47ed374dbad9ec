use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse group spec: {0}")]
    Parse(String),

    #[error("elements or sequences belong to different groups")]
    MismatchedGroups,

    #[error("{what} is {actual}, above the configured cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("sequence is not a subsequence of the target")]
    NotSubsequence,

    #[error("cannot amalgamate a zero-sum subsequence")]
    ZeroSumAmalgamation,

    #[error("sequence may not contain the identity element")]
    IdentityInSequence,

    #[error("element {0:?} is not a valid element of the group")]
    InvalidElement(Vec<u64>),

    #[error("custom weight has no value for order {0}")]
    MissingWeight(u64),

    #[error("weights must be nonnegative (order {0})")]
    NegativeWeight(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("value out of range: {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Returns `CapExceeded` when `actual > limit`.
pub(crate) fn check_cap(what: &'static str, actual: u64, limit: u64) -> Result<()> {
    if actual > limit {
        Err(Error::CapExceeded { what, limit, actual })
    } else {
        Ok(())
    }
}
