//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by alphabet, polynomial, basis, language, and series
/// operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("letter index {index} is not in the alphabet (size {size})")]
    ForeignLetter { index: u32, size: usize },

    #[error("unknown variable name `{0}`")]
    UnknownVariable(String),

    #[error("leading monomial of the zero polynomial is undefined")]
    ZeroLeadingMonomial,

    #[error("zero relation in input at position {0}")]
    ZeroRelation(usize),

    #[error("invalid s-polynomial witness: {0}")]
    InvalidWitness(String),

    #[error("obstruction set is not subword-free: {shorter:?} is a factor of {longer:?}")]
    NotSubwordFree { shorter: Vec<String>, longer: Vec<String> },

    #[error("series is not invertible: constant term is zero")]
    NotInvertible,

    #[error("series square root requires constant term 1")]
    BadSqrtConstant,

    #[error("expected a removable singularity: coefficient at degree {degree} is {value}, not zero")]
    SingularityNotRemovable { degree: u64, value: String },

    #[error("grammar error: {0}")]
    Grammar(String),

    #[error("grammar not proper for fixed-point evaluation; still changing after {rounds} rounds: {symbols:?}")]
    FixedPoint { rounds: usize, symbols: Vec<String> },

    #[error("enumeration guard exceeded: {0}")]
    Guard(String),

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
