use alloc::string::String;

/// Errors reported by the counting pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("vertex degree {degree} in the upper part exceeds the inclusion-exclusion cap {cap}; choose a larger alpha")]
    DegreeCap { degree: usize, cap: usize },

    #[error("Gaifman projection needs about {entries} adjacency entries, above the limit {limit}")]
    ProjectionTooLarge { entries: u128, limit: u128 },

    #[error("enumeration budget exceeded: about {estimate} candidates, budget {budget}")]
    Budget { estimate: u128, budget: u128 },

    #[error("no colorful occurrences under this coloring")]
    NoColorfulOccurrences,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
