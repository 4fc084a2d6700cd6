use thiserror::Error;

/// Errors raised by the engine. Every variant carries enough context to be
/// printed verbatim by a front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid M-space: {0}")]
    InvalidSpace(String),

    #[error("M-sets belong to different M-spaces")]
    SpaceMismatch,

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("count {count} for `{symbol}` exceeds multiplicity bound w = {w}")]
    CountOutOfRange { symbol: String, count: u64, w: u32 },

    #[error("{sub} is not a sub-M-set of {sup}")]
    NotSubset { sub: String, sup: String },

    #[error("enumeration budget exceeded: {what} needs {needed} members, budget is {budget}")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed family: {0}")]
    MalformedFamily(String),

    #[error("not an M-topology: {0}")]
    InvalidTopology(String),

    #[error("basis does not generate an M-topology: {0}")]
    BasisGeneration(String),

    #[error("family does not cover {target}")]
    NotACover { target: String },

    #[error("not a semi-open cover: {0}")]
    NotSemiOpenCover(String),

    #[error("equivalence violated for {set} in topology {topology}: {detail}")]
    EquivalenceViolation {
        topology: String,
        set: String,
        detail: String,
    },

    #[error("expected A ⊆ N ⊆ M, got A = {a}, N = {n}, M = {m}")]
    ChainOfSubsets { a: String, n: String, m: String },

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("unknown remark id `{0}`")]
    UnknownRemark(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
