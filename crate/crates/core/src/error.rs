use thiserror::Error;

use crate::rational::Rational;

/// Errors raised by constructors and operations with data-dependent
/// preconditions. Structural misuse (mixing group exponents, indices out
/// of range) panics instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("masses must be nonnegative, got {0} at index {1}")]
    NegativeMass(Rational, usize),
    #[error("masses must sum to 1 exactly, got {0}")]
    MassSum(Rational),
    #[error("expected {expected} masses for l={l}, got {got}")]
    MassCount { l: u32, expected: usize, got: usize },
    #[error("group exponent l={l} is not supported for {context}")]
    UnsupportedExponent { l: u32, context: &'static str },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a direct-sum decomposition (need |X1|=2, |X2|=4, trivial intersection)")]
    NotADecomposition,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("empty element set")]
    EmptySet,
    #[error("parameter {name}={value} outside the valid range {range}")]
    ParameterRange { name: &'static str, value: Rational, range: &'static str },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
