use thiserror::Error;

/// Errors produced by votelab operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} alternatives, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{what} out of range: {value} (allowed {allowed})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        allowed: String,
    },

    #[error("a profile needs at least one ranking")]
    EmptyProfile,

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("alternatives must be distinct, got {0} twice")]
    SameAlternative(usize),

    #[error("rule computations need at least 3 alternatives, got {0}")]
    TooFewAlternatives(usize),

    #[error("search budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid X3C instance: {0}")]
    InvalidInstance(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("not implemented: {0}")]
    NotImplemented(&'static str),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn out_of_range(what: &'static str, value: impl TryInto<i64>, allowed: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            value: value.try_into().unwrap_or(i64::MAX),
            allowed: allowed.into(),
        }
    }

    /// True for errors caused by an exhausted search budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    /// True for errors raised while building a reduction or a construction.
    pub fn is_construction(&self) -> bool {
        matches!(self, Error::Construction(_) | Error::NotImplemented(_))
    }
}
