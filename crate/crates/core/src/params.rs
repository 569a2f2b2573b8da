//! Heredity parameters of the operator family.

use crate::error::DomainError;

/// The four heredity parameters `(a, b, alpha, beta)`, each in `[0, 1]`.
///
/// `a` and `b` weight the female coordinate map, `alpha` and `beta` the male
/// one:
///
/// ```text
/// x' = (b - a)xy + ax + (1 - b)y
/// y' = (beta - alpha)xy + alpha*x + (1 - beta)y
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSet {
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64, DomainError> {
    // NaN fails the range test, so non-finite values are rejected here too.
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(DomainError::OutOfRange { name, value })
    }
}

impl ParamSet {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self, DomainError> {
        Ok(Self {
            a: check_unit("a", a)?,
            b: check_unit("b", b)?,
            alpha: check_unit("alpha", alpha)?,
            beta: check_unit("beta", beta)?,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `(a, b, alpha, beta)` as a tuple.
    pub fn as_tuple(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.alpha, self.beta)
    }
}

impl std::fmt::Display for ParamSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.alpha, self.beta)
    }
}
