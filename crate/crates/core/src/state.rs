//! Population states in reduced (2D) and full simplex-product (4D) form.

use crate::error::DomainError;
use crate::params::check_unit;

/// Tolerance on the marginal sums of a [`State4`].
pub const MARGINAL_TOL: f64 = 1e-12;

/// Reduced state `(x, y)`: the frequency of female type 1 and male type 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State2 {
    x: f64,
    y: f64,
}

impl State2 {
    pub fn new(x: f64, y: f64) -> Result<Self, DomainError> {
        Ok(Self {
            x: check_unit("x", x)?,
            y: check_unit("y", y)?,
        })
    }

    /// Construct without range checks. Callers must guarantee both
    /// coordinates are finite and in `[0, 1]`.
    pub(crate) fn raw(x: f64, y: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
        Self { x, y }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Sup-norm distance to another state.
    pub fn dist_inf(&self, other: &State2) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

impl std::fmt::Display for State2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Full state `(x1, x2; y1, y2)` on the product of two 1-simplices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State4 {
    x1: f64,
    x2: f64,
    y1: f64,
    y2: f64,
}

impl State4 {
    pub fn new(x1: f64, x2: f64, y1: f64, y2: f64) -> Result<Self, DomainError> {
        for (name, v) in [("x1", x1), ("x2", x2), ("y1", y1), ("y2", y2)] {
            if v < 0.0 || !v.is_finite() {
                return Err(DomainError::OutOfRange { name, value: v });
            }
        }
        let sx = x1 + x2;
        if (sx - 1.0).abs() > MARGINAL_TOL {
            return Err(DomainError::MarginalSum {
                name: "x1 + x2",
                sum: sx,
                tol: MARGINAL_TOL,
            });
        }
        let sy = y1 + y2;
        if (sy - 1.0).abs() > MARGINAL_TOL {
            return Err(DomainError::MarginalSum {
                name: "y1 + y2",
                sum: sy,
                tol: MARGINAL_TOL,
            });
        }
        Ok(Self { x1, x2, y1, y2 })
    }

    pub(crate) fn raw(x1: f64, x2: f64, y1: f64, y2: f64) -> Self {
        Self { x1, x2, y1, y2 }
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn y2(&self) -> f64 {
        self.y2
    }
}

impl std::fmt::Display for State4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}; {}, {})", self.x1, self.x2, self.y1, self.y2)
    }
}

/// Embed a reduced state as `(x, 1-x; y, 1-y)`.
pub fn lift(s: State2) -> State4 {
    State4::raw(s.x, 1.0 - s.x, s.y, 1.0 - s.y)
}

/// Project a full state to its first marginals `(x1, y1)`.
pub fn project(s: State4) -> State2 {
    State2::raw(s.x1.clamp(0.0, 1.0), s.y1.clamp(0.0, 1.0))
}
