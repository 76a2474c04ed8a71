use thiserror::Error;

/// Errors produced by compositional operations.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("input vector sums to zero; cannot close onto the simplex")]
    DegenerateInput,

    #[error("negative part at index {index}: {value}")]
    NegativePart { index: usize, value: f64 },

    #[error("zero part not allowed by this operation (index {index})")]
    ZeroPartNotAllowed { index: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("need at least 2 components, got {got}")]
    DimensionTooSmall { got: usize },

    #[error("alpha = {alpha} outside the admissible domain {domain}")]
    InvalidAlpha { alpha: f64, domain: &'static str },

    #[error("divisor index {index} out of range for {dim} components")]
    DivisorOutOfRange { index: usize, dim: usize },

    #[error("sample covariance is singular (n = {n} too small for d = {d}?)")]
    SingularCovariance { n: usize, d: usize },

    #[error("numerical oracle failed to converge after {iterations} iterations")]
    OracleNonConvergence { iterations: usize },

    #[error("invalid plot spec: {0}")]
    SpecError(String),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("subset must contain at least 2 indices")]
    SubsetTooSmall,
}

pub type Result<T> = std::result::Result<T, Error>;
