use thiserror::Error;

/// Everything that can go wrong in the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("`{0}` is not a Lyndon-Shirshov word under the active order")]
    NotLyndon(String),

    #[error("polynomial is not a Lie element: leading word `{0}` is not Lyndon-Shirshov")]
    NotLieElement(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("order hypothesis fails for {family} under {order}: instance {instance} leads with `{found}`, expected `{expected}`")]
    OrderHypothesis {
        family: String,
        order: String,
        instance: String,
        expected: String,
        found: String,
    },

    #[error("arity mismatch: identity takes {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("identity is not multilinear: {0}")]
    NotMultilinear(String),

    #[error("rewriting did not finish within {cap} steps")]
    StepCap { cap: usize },

    #[error("zero polynomial has no leading word")]
    Zero,

    #[error("tail factorization violates the non-decreasing factor order at `{0}`")]
    TailOrdering(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
