//! Numerical engine for the four-parameter family of Volterra quadratic
//! stochastic operators of a two-sex population with two types per sex.
//!
//! In reduced coordinates `(x, y)` — the frequencies of female type 1 and
//! male type 1 — the operator is
//!
//! ```text
//! x' = (b - a)xy + ax + (1 - b)y
//! y' = (beta - alpha)xy + alpha*x + (1 - beta)y
//! ```
//!
//! with heredity parameters `(a, b, alpha, beta)` in `[0, 1]^4`. The crate
//! provides:
//!
//! - [`dynamics`]: the operator in 2D and 4D form, trajectory iteration with
//!   convergence and short-cycle detection;
//! - [`fixed_points`]: exact enumeration of the fixed-point locus, Jacobian
//!   spectra and hyperbolicity classification;
//! - [`subfamilies`]: detection of the regular parameter slices and their
//!   closed-form limits, Lyapunov checks and the logistic conjugacy on the
//!   diagonal;
//! - [`sampling`]: seeded random draws for verification sweeps;
//! - [`mod@reference`]: the published example table with recomputation and
//!   discrepancy flags.

pub mod dynamics;
pub mod error;
pub mod fixed_points;
pub mod params;
pub mod reference;
pub mod sampling;
pub mod state;
pub mod subfamilies;

pub use dynamics::{iterate, iterate_default, step2, step2_raw, step4, Outcome, Trajectory};
pub use error::{ClosedFormError, DenominatorVanishes, DomainError, IterationError};
pub use fixed_points::{
    classify, continuum_classification_sweep, continuum_condition, fixed_point_set, jacobian,
    stability_at, x_tilde, FixedPointKind, FixedPointSet, Mat2, Stability, StabilityReport,
};
pub use params::ParamSet;
pub use state::{lift, project, State2, State4};
pub use subfamilies::{
    conjugacy_defect, corner_limit, detect_subfamily, diagonal_limit, diagonal_restriction,
    linear_aux_sequences, linear_limit, logistic_mu, lyapunov_check, x_invariant_limit,
    y_invariant_iterate_formula, y_invariant_limit, ClosedFormLimit, LimitFormula,
    RegularitySummary, SubfamilyTag,
};
