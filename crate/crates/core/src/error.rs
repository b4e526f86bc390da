use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must contain at least 2 observations, got {0}")]
    TooShort(usize),
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },
    #[error("empty input")]
    Empty,
    #[error("block size {b} invalid for series of length {n}")]
    InvalidBlockSize { b: usize, n: usize },
    #[error("block starting at {i} with size {b} exceeds series length {n}")]
    IndexOutOfRange { i: usize, b: usize, n: usize },
    #[error("self-normalizer is zero (series is constant)")]
    DegenerateNormalizer,
    #[error("every block normalizer is zero")]
    AllBlocksDegenerate,
    #[error("probability {0} outside its admissible range")]
    InvalidProbability(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("length mismatch: need at least {needed}, got {got}")]
    LengthMismatch { needed: usize, got: usize },
    #[error("autocovariance matrix of order {m} is not positive definite (smallest eigenvalue {lambda:e})")]
    NonPositiveDefinite { m: usize, lambda: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
