use thiserror::Error;

use crate::degrees::Degree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pairing matrix is singular")]
    SingularPairing,
    #[error("algebra failed validation: {0}")]
    InvalidAlgebra(String),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("omega is not strictly positive on cone generator {0:?}")]
    UnboundedCone(Vec<i64>),
    #[error("no canonical class and no explicit insertion bound configured")]
    MissingBound,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("closed-form count is not integral for r = {0}")]
    NonIntegral(u32),
    #[error("brute-force count limited to r <= {max}, got {got}")]
    RangeExceeded { max: u32, got: u32 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("linear part of five-term combination is nonzero (internal bug)")]
    LinearPartNonzero,
    #[error("missing value for lower-degree number {0}")]
    MissingLowerValue(Degree),
    #[error("missing value for number {0}")]
    MissingValue(Degree),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("bad preset parameters: {0}")]
    BadParams(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
