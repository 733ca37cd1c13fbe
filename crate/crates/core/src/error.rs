use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("multiplication table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("invalid group parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("subsets belong to different groups (width {0} vs {1})")]
    GroupMismatch(usize, usize),
    #[error("input set is empty")]
    EmptyInput,
    #[error("set lives on a carrier of size {found}, expected {expected}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("set is not in the measure's explicit domain")]
    NotInDomain,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("reference set has measure zero")]
    ZeroMeasure,
    #[error("cannot cover a nonempty set with translates of the empty set")]
    EmptyCoveringSet,
    #[error("set is not symmetric")]
    NotSymmetric,
    #[error("set does not contain the identity")]
    MissingIdentity,
    #[error("recursion budget exceeded: {0}")]
    DepthExceeded(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("no exponent k <= {cap} with S <= D^k at chain step {step}")]
    ExponentCapExceeded { step: usize, cap: usize },
    #[error("chain did not stabilize")]
    NotStabilized,
    #[error("terminal set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("exact solver required but instance of size {0} exceeded the exact budget")]
    ExactUnavailable(usize),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field `{field}`: {message}")]
    Validation { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
