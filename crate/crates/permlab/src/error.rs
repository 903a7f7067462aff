use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate. Numeric preconditions,
/// comparator exhaustion and search budgets are all surfaced loudly;
/// nothing is silently approximated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot compare surds over distinct fields: sqrt({0}) vs sqrt({1})")]
    MixedField(u64, u64),

    #[error("invalid surd: {0}")]
    InvalidSurd(String),

    #[error("x and y are rationally dependent; the permutation may be ill-defined")]
    RationalDependence,

    #[error("values are not pairwise distinct (positions {0} and {1} compare equal)")]
    DuplicateValue(usize, usize),

    #[error("gamma is undefined on the diagonal pair ({0},{0})")]
    InvalidPair(usize),

    #[error(
        "suffixes at {i} and {j} agree through {lookahead} symbols; \
         comparison unresolved (raise the lookahead or use an aperiodic word)"
    )]
    UnresolvedComparison { i: usize, j: usize, lookahead: usize },

    #[error("non-prolongable morphism: {0}")]
    NonProlongable(String),

    #[error("search budget of {budget} nodes exceeded ({found} results found so far)")]
    BudgetExceeded { budget: u64, found: usize },

    #[error("theorem check failed: {0}")]
    TheoremViolated(String),

    #[error("malformed automaton: {0}")]
    MalformedAutomaton(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
