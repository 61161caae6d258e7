use thiserror::Error;

use crate::ideal::IdealHandle;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("scalar outside field: {0}")]
    ScalarOutsideField(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("step budget of {0} reductions exhausted")]
    Budget(u64),

    /// The ideal lies inside the prime with this index.
    #[error("precondition violated: the ideal is contained in prime #{0}")]
    ContainedInPrime(usize),

    /// Some member of the family contains the ideal; carries `(I + q) : U^inf`.
    #[error("a prime of the family contains the ideal (saturation {0} is proper)")]
    FamilyContains(Box<IdealHandle>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
