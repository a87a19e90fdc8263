use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("prefix profile is undefined for a permutation of one letter")]
    ProfileUndefined,

    #[error("cannot reduce a permutation of one letter")]
    CannotReduce,

    #[error("oracle bound exceeded: n = {n} but the bound is {bound}")]
    OracleBoundExceeded { n: usize, bound: usize },

    #[error("no pattern is assigned to {k}: it is not in the repeat set")]
    UndefinedAssignment { k: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid witness request: {0}")]
    InvalidWitnessRequest(String),

    #[error("rank range error: {0}")]
    Range(String),

    #[error("output failed: {0}")]
    Output(String),

    /// A structural statement about the assignment failed to hold. Reaching
    /// this means either a bug or a counterexample.
    #[error("invariant violated: {0}")]
    Invariant(String),
}
