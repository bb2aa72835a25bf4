use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at token {token:?}: {reason}")]
    Syntax { token: String, reason: String },

    #[error("generator index {index} is invalid for {n_strands} strands")]
    IndexOutOfRange { index: usize, n_strands: usize },

    #[error("a braid needs at least one strand")]
    NoStrands,

    #[error("strand-count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("super summit set exceeded the cap of {cap} elements")]
    ResourceCap { cap: usize },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid template: {0}")]
    InvalidTemplate(String),

    #[error("braiding assignment does not fit the template: {0}")]
    ArityMismatch(String),

    #[error("word has {crossings} crossings, above the state-sum cap of {cap}")]
    CrossingCap { crossings: usize, cap: usize },

    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),

    #[error("move replay failed at step {step}: {reason}")]
    Replay { step: usize, reason: String },

    #[error("polynomial parse error: {0}")]
    PolynomialParse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
