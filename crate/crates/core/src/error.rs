use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<u32>),
    #[error("vertex {vertex} appears twice in one edge")]
    DuplicateVertex { vertex: u32 },
    #[error("unsupported arity {arity} (allowed {min}..={max})")]
    UnsupportedArity { arity: usize, min: usize, max: usize },
    #[error("arity mismatch: expected {expected} edges, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("inclusion-exclusion yields negative cell at level {level} ({value})")]
    NegativeCell { level: usize, value: i128 },
    #[error("intersection sizes must be non-increasing: {0:?}")]
    NotMonotone(Vec<u64>),
    #[error("core size {core} exceeds uniformity {r}")]
    InvalidCore { core: usize, r: usize },
    #[error("need at least {need} edges, have {have}")]
    TooFewEdges { need: usize, have: usize },
    #[error("families differ in size ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("{0} is not a supported plane order (odd prime <= 13)")]
    InvalidOrder(u32),
    #[error("point {0} listed twice")]
    DuplicatePoint(u32),
    #[error("point {0} out of range")]
    UnknownPoint(u32),
    #[error("unsupported matrix dimension k={k}, m={m}")]
    UnsupportedDimension { k: usize, m: usize },
    #[error("enumeration of {needed} subsets exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("family is not uniform")]
    NotUniform,
    #[error("pattern {0} is an equal-size sunflower")]
    SunflowerPattern(usize),
    #[error("alpha undefined: b_{index} is zero")]
    UndefinedAlpha { index: usize },
    #[error("value does not fit in 64 bits")]
    Overflow,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
