//! Error types shared across the crate.

use thiserror::Error;

/// Errors from the exact field algebra.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("homogeneity degree mismatch on add: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error("radial exponent parity mismatch on add ({0} vs {1}); operands are not in a common P/r^s class")]
    ParityMismatch(u32, u32),
    #[error("terms of a homogeneous polynomial must share total degree (found {0} and {1})")]
    Inhomogeneous(u32, u32),
    #[error("multi-index length {0} does not match dimension {1}")]
    BadMultiIndex(usize, usize),
}

/// Errors from map construction.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("no such map exists: order {ell} exceeds dimension {m}")]
    OrderExceedsDimension { ell: usize, m: usize },
    #[error("recursion denominator vanishes at level {level} (m = {m}); map undefined")]
    ZeroDenominator { level: usize, m: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("order must be at least 1")]
    ZeroOrder,
}

/// Errors from the constraint solvers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("degenerate pair (ell={ell}, m={m}): ell*(ell+m-2) = 0, constraint undefined")]
    DegeneratePair { ell: usize, m: usize },
    #[error("negative discriminant: no real roots")]
    NegativeDiscriminant,
}

/// Errors from numeric evaluation.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("evaluation point has wrong dimension: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("field is singular at the origin; |x| must be positive")]
    OriginSingularity,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

/// Parse failure for the textual field format.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("{msg}")]
pub struct ParseFieldError {
    msg: String,
}

impl ParseFieldError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParseFieldError { msg: msg.into() }
    }
}
