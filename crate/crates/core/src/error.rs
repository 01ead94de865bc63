use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain (n = 0, gcd violation, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A result does not fit the 64-bit arithmetic used throughout.
    #[error("range error: {0}")]
    Range(String),
    /// A configured engine or enumeration limit was hit before a decision was reached.
    #[error("capacity exceeded: {what} (cap {cap})")]
    Capacity { what: String, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub fn capacity(what: impl Into<String>, cap: u64) -> Self {
        Error::Capacity {
            what: what.into(),
            cap,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
