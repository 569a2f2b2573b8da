//! Error types shared across the crate.

use thiserror::Error;

/// Construction failures for parameter sets and population states.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    /// A parameter or coordinate fell outside `[0, 1]` (or was not finite).
    #[error("{name} must lie in [0, 1], got {value}")]
    OutOfRange { name: &'static str, value: f64 },
    /// A simplex marginal did not sum to 1 within tolerance.
    #[error("{name} must sum to 1 within {tol:e}, got {sum}")]
    MarginalSum {
        name: &'static str,
        sum: f64,
        tol: f64,
    },
}

/// Invalid arguments to [`crate::dynamics::iterate`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IterationError {
    #[error("max_iter must be at least 1")]
    InvalidMaxIter,
    #[error("tol must be positive and finite, got {0}")]
    InvalidTol(f64),
}

/// The fixed-point curve denominator `1 + (a-b)y - a` vanished at the
/// requested `y`.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("denominator 1 + (a-b)y - a vanishes at y = {y} (got {denominator:e})")]
pub struct DenominatorVanishes {
    pub y: f64,
    pub denominator: f64,
}

/// A closed-form limit was requested outside the hypotheses under which it
/// holds.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    /// The parameters do not satisfy the defining equalities of the subfamily.
    #[error("parameters do not satisfy the {required} hypotheses")]
    NotInSubfamily { required: &'static str },
    /// `1 - a + alpha = 0`, i.e. the identity corner of the linear family.
    #[error("degenerate denominator: a = 1 and alpha = 0 (identity operator)")]
    DegenerateDenominator,
    /// The geometric ratio driving the limit has modulus 1 or larger.
    #[error("geometric ratio {ratio} is not contracting; closed form does not apply")]
    HypothesisViolated { ratio: f64 },
    /// `a = 0, b = 1` gives `mu = 0`; the conjugacy collapses.
    #[error("degenerate conjugacy: a = 0 and b = 1 give mu = 0")]
    DegenerateConjugacy,
    /// The initial point is itself the excluded fixed point of the statement.
    #[error("initial point ({x}, {y}) is excluded by the convergence statement")]
    ExcludedInitialPoint { x: f64, y: f64 },
}
