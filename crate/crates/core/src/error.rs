use thiserror::Error;

use crate::formula::FormulaError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("events range over different state spaces ({left} vs {right} states)")]
    UniverseMismatch { left: usize, right: usize },

    #[error("line {line}: {message}")]
    ModelSyntax { line: usize, message: String },

    #[error("missing `states:` header")]
    MissingStatesHeader,

    #[error("state space must contain at least one state")]
    EmptyStateSpace,

    #[error("invalid state label `{0}`")]
    InvalidLabel(String),

    #[error("duplicate state label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown state label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate possibility line for state `{0}`")]
    DuplicatePossibility(String),

    #[error("no possibility line for state `{0}`")]
    MissingPossibility(String),

    #[error("possibility correspondence has {got} entries, expected {expected}")]
    CorrespondenceLength { expected: usize, got: usize },

    #[error("model has {n} states, limit is {cap}")]
    ModelTooLarge { n: usize, cap: usize },

    #[error("global unawareness needs all 2^{n} events; limit is {cap} states")]
    GlobalCapExceeded { n: usize, cap: usize },

    #[error("enumeration over {n} states exceeds the limit of {cap}")]
    EnumerationCapExceeded { n: usize, cap: usize },

    #[error("unawareness depth must be at least 1")]
    ZeroDepth,

    #[error("contradictory constraints: {0}")]
    ContradictoryConstraints(String),

    #[error("worker count must be positive")]
    ZeroWorkers,

    #[error("search target must be a predicate formula")]
    NotAPredicate,

    #[error("predicates may only appear at the root of a formula")]
    NestedPredicate,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error(transparent)]
    Formula(#[from] FormulaError),

    #[error("invalid JSON model: {0}")]
    Json(String),
}

impl Error {
    /// Resource limits, as opposed to malformed input or misuse.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::ModelTooLarge { .. }
                | Error::GlobalCapExceeded { .. }
                | Error::EnumerationCapExceeded { .. }
        )
    }
}
