use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {letter}{rank}: {reason}")]
    InvalidRootSystem {
        letter: char,
        rank: usize,
        reason: String,
    },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {weight} has length {got}, expected {expected}")]
    WeightLength {
        weight: String,
        got: usize,
        expected: usize,
    },

    #[error("character tags differ: {0} vs {1}")]
    TagMismatch(String, String),

    #[error("character is not Weyl-symmetric at weight {0}")]
    NotWeylSymmetric(String),

    /// An arithmetic invariant was violated; this always indicates a bug.
    #[error("internal consistency fault: {0}")]
    Consistency(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial has multidegree {got:?}, expected {expected:?}")]
    MixedMultidegree { got: Vec<u32>, expected: Vec<u32> },

    #[error("group closure exceeds the enumeration cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("generator {0} is not invertible")]
    NotInvertible(usize),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("catalog: {0}")]
    Catalog(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
