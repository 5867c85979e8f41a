use thiserror::Error;

/// Errors raised by graph queries, constructions, verifiers and the exact solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: String,
        limit: String,
    },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("ell is undefined for the constant word {0}")]
    UndefinedEll(String),

    #[error("ell({word}) = {ell} lies outside 1..={max}")]
    EllOutOfRange {
        word: String,
        ell: usize,
        max: usize,
    },

    #[error("labeling mode mismatch: expected {expected}, found {found}")]
    ModeMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("value {value} is not allowed in a {mode} labeling")]
    InvalidValue { value: u8, mode: &'static str },

    #[error("set needs at least two members, found {0}")]
    TooFewMembers(usize),

    #[error("construction produced duplicate member {word} at level t = {level}")]
    DuplicateMember { word: String, level: u32 },

    #[error("construction invariant violated: {0}")]
    Construction(String),

    #[error(
        "solver budget exhausted: best incumbent {incumbent:?}, proven lower bound {lower_bound}"
    )]
    BudgetExhausted {
        incumbent: Option<u64>,
        lower_bound: u64,
    },

    #[error("solver configuration rejected: {0}")]
    SolverConfig(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn capacity(
        what: &'static str,
        needed: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::Capacity {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }
}
