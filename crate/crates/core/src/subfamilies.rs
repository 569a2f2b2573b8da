//! The five regular subfamilies and their closed-form limits.
//!
//! Five parameter slices admit a complete convergence analysis: the linear
//! operators `a = b, alpha = beta`, the coordinate-invariant families
//! `alpha = beta = 0` and `a = b = 1`, the corner family `b = 1, alpha = 0`,
//! and the diagonal family `a = alpha, b = beta`, which after one step
//! reduces to a quadratic map on the diagonal conjugate to the logistic
//! family with `mu = 1 + a - b`.

use crate::dynamics::{iterate, step2, Outcome};
use crate::error::ClosedFormError;
use crate::params::ParamSet;
use crate::sampling::{family_draw, rng_from_seed, uniform_state, RegularFamily};
use crate::state::State2;

/// A closed-form limit satisfies `dist_inf(step2(p, limit), limit)` below
/// this bound.
pub const LIMIT_RESIDUAL_TOL: f64 = 1e-10;

/// Subfamily membership of a parameter set, most specific first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubfamilyTag {
    /// `a = b = 1, alpha = beta = 0`: the identity operator.
    Identity,
    /// `a = b = 0, alpha = beta = 1`: the coordinate swap; every orbit has
    /// period two.
    Involution,
    /// `b = 1, alpha = 0`.
    Corner,
    /// `a = b, alpha = beta`.
    Linear,
    /// `alpha = beta = 0, a != b`.
    YInvariant,
    /// `a = b = 1, alpha != beta`.
    XInvariant,
    /// `a = alpha, b = beta` with `a != b`.
    Diagonal,
    /// None of the analyzed slices.
    General,
}

impl SubfamilyTag {
    pub fn name(&self) -> &'static str {
        match self {
            SubfamilyTag::Identity => "identity",
            SubfamilyTag::Involution => "involution",
            SubfamilyTag::Corner => "corner",
            SubfamilyTag::Linear => "linear",
            SubfamilyTag::YInvariant => "y-invariant",
            SubfamilyTag::XInvariant => "x-invariant",
            SubfamilyTag::Diagonal => "diagonal",
            SubfamilyTag::General => "general",
        }
    }
}

impl std::fmt::Display for SubfamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Match `p` against the subfamily hypotheses with exact float equality.
///
/// Subfamilies are user-specified constructions, not measurements: a
/// parameter set that is merely close to a slice is [`SubfamilyTag::General`].
/// Overlaps resolve in declaration order (identity, involution, corner,
/// linear, y-invariant, x-invariant, diagonal).
pub fn detect_subfamily(p: &ParamSet) -> SubfamilyTag {
    let (a, b, alpha, beta) = p.as_tuple();
    if a == 1.0 && b == 1.0 && alpha == 0.0 && beta == 0.0 {
        SubfamilyTag::Identity
    } else if a == 0.0 && b == 0.0 && alpha == 1.0 && beta == 1.0 {
        SubfamilyTag::Involution
    } else if b == 1.0 && alpha == 0.0 {
        SubfamilyTag::Corner
    } else if a == b && alpha == beta {
        SubfamilyTag::Linear
    } else if alpha == 0.0 && beta == 0.0 {
        SubfamilyTag::YInvariant
    } else if a == 1.0 && b == 1.0 {
        SubfamilyTag::XInvariant
    } else if a == alpha && b == beta {
        SubfamilyTag::Diagonal
    } else {
        SubfamilyTag::General
    }
}

/// Which closed form produced a limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitFormula {
    /// `x* = y* = (alpha x0 + (1-a) y0) / (1 - a + alpha)`.
    LinearAverage,
    /// `x* = (1-b)y0 / (1 - a - (b-a)y0)`, `y* = y0`.
    YInvariantGeometric,
    /// `x* = x0`, `y* = alpha x0 / (beta - (beta-alpha)x0)`.
    XInvariantGeometric,
    /// The origin.
    CornerOrigin,
    /// `(0,0)` when `a <= b`, `(1,1)` when `a > b`.
    DiagonalCorner,
}

impl LimitFormula {
    pub fn name(&self) -> &'static str {
        match self {
            LimitFormula::LinearAverage => "linear-average",
            LimitFormula::YInvariantGeometric => "y-invariant-geometric",
            LimitFormula::XInvariantGeometric => "x-invariant-geometric",
            LimitFormula::CornerOrigin => "corner-origin",
            LimitFormula::DiagonalCorner => "diagonal-corner",
        }
    }
}

/// A limit computed in closed form. `valid` confirms the limit is a fixed
/// point to within [`LIMIT_RESIDUAL_TOL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormLimit {
    pub limit: State2,
    pub formula: LimitFormula,
    pub valid: bool,
}

fn finish(p: &ParamSet, x: f64, y: f64, formula: LimitFormula) -> ClosedFormLimit {
    // rounding can push a boundary limit out of [0,1] by an ulp
    let limit = State2::new(x.clamp(0.0, 1.0), y.clamp(0.0, 1.0))
        .expect("closed-form limits lie in the unit square");
    let valid = step2(p, limit).dist_inf(&limit) < LIMIT_RESIDUAL_TOL;
    ClosedFormLimit {
        limit,
        formula,
        valid,
    }
}

/// Limit of the linear operator `a = b, alpha = beta`:
/// `x* = y* = (alpha x0 + (1-a) y0) / (1 - a + alpha)`.
pub fn linear_limit(p: &ParamSet, s0: State2) -> Result<ClosedFormLimit, ClosedFormError> {
    let (a, b, alpha, beta) = p.as_tuple();
    if a != b || alpha != beta {
        return Err(ClosedFormError::NotInSubfamily {
            required: "a = b, alpha = beta",
        });
    }
    if a == 1.0 && alpha == 0.0 {
        return Err(ClosedFormError::DegenerateDenominator);
    }
    if a == 0.0 && alpha == 1.0 {
        // the swap operator: orbits have period two, no limit
        return Err(ClosedFormError::HypothesisViolated { ratio: -1.0 });
    }
    let denom = 1.0 - a + alpha;
    let x = (alpha * s0.x() + (1.0 - a) * s0.y()) / denom;
    Ok(finish(p, x, x, LimitFormula::LinearAverage))
}

/// The difference and sum sequences of the linear operator in closed form:
/// `xi_n = (a - alpha)^n (x0 - y0)` and `eta_n = A1 + A2 (a - alpha)^n`
/// with `A1 = 2(alpha x0 + (1-a) y0) / (1 - a + alpha)` and
/// `A2 = (1 - a - alpha)(x0 - y0) / (1 - a + alpha)`.
pub fn linear_aux_sequences(
    p: &ParamSet,
    s0: State2,
    n: u32,
) -> Result<(f64, f64), ClosedFormError> {
    let (a, b, alpha, beta) = p.as_tuple();
    if a != b || alpha != beta {
        return Err(ClosedFormError::NotInSubfamily {
            required: "a = b, alpha = beta",
        });
    }
    if a == 1.0 && alpha == 0.0 {
        return Err(ClosedFormError::DegenerateDenominator);
    }
    let xi0 = s0.x() - s0.y();
    let ratio = (a - alpha).powi(n as i32);
    let denom = 1.0 - a + alpha;
    let a1 = 2.0 * (alpha * s0.x() + (1.0 - a) * s0.y()) / denom;
    let a2 = (1.0 - a - alpha) * xi0 / denom;
    Ok((ratio * xi0, a1 + a2 * ratio))
}

/// Per-step slack absorbing rounding in the Lyapunov comparisons.
const LYAPUNOV_SLACK: f64 = 1e-12;

/// Check the two linear-family Lyapunov functions `phi = x - y` and
/// `psi = x + y` along a trajectory.
///
/// `|phi|` must never grow, and on each half-plane the claimed directions
/// must hold step by step: above the diagonal (`x > y`) `phi` is
/// non-increasing and `psi` non-decreasing, below it the reverse. Requires
/// linear parameters (`a = b`, `alpha = beta`, `a != alpha`); the direction
/// claims for `psi` hold throughout the slice `a + alpha >= 1`.
pub fn lyapunov_check(p: &ParamSet, states: &[State2]) -> bool {
    debug_assert!(p.a() == p.b() && p.alpha() == p.beta());
    for w in states.windows(2) {
        let (s, t) = (w[0], w[1]);
        let phi_s = s.x() - s.y();
        let phi_t = t.x() - t.y();
        let psi_s = s.x() + s.y();
        let psi_t = t.x() + t.y();
        if phi_t.abs() > phi_s.abs() + LYAPUNOV_SLACK {
            return false;
        }
        if phi_s > LYAPUNOV_SLACK {
            if phi_t > phi_s + LYAPUNOV_SLACK || psi_t < psi_s - LYAPUNOV_SLACK {
                return false;
            }
        } else if phi_s < -LYAPUNOV_SLACK {
            if phi_t < phi_s - LYAPUNOV_SLACK || psi_t > psi_s + LYAPUNOV_SLACK {
                return false;
            }
        } else if phi_t.abs() > LYAPUNOV_SLACK || (psi_t - psi_s).abs() > LYAPUNOV_SLACK {
            // on the diagonal both functionals freeze
            return false;
        }
    }
    true
}

/// Limit of the `alpha = beta = 0, a != b` family. `y` never moves; `x`
/// follows a geometric recursion with ratio `(b-a)y0 + a` and limit
/// `(1-b)y0 / (1 - a - (b-a)y0)`.
pub fn y_invariant_limit(p: &ParamSet, s0: State2) -> Result<ClosedFormLimit, ClosedFormError> {
    let (a, b, alpha, beta) = p.as_tuple();
    if alpha != 0.0 || beta != 0.0 || a == b {
        return Err(ClosedFormError::NotInSubfamily {
            required: "alpha = beta = 0, a != b",
        });
    }
    let ratio = (b - a) * s0.y() + a;
    if ratio.abs() >= 1.0 {
        return Err(ClosedFormError::HypothesisViolated { ratio });
    }
    let x = (1.0 - b) * s0.y() / (1.0 - a - (b - a) * s0.y());
    Ok(finish(p, x, s0.y(), LimitFormula::YInvariantGeometric))
}

/// The `n`-th iterate of the `alpha = beta = 0` family in closed form:
/// `x_n = r^n x0 + (1-b) y0 * sum_{k<n} r^k` with `r = (b-a)y0 + a`.
pub fn y_invariant_iterate_formula(p: &ParamSet, s0: State2, n: u32) -> f64 {
    debug_assert!(p.alpha() == 0.0 && p.beta() == 0.0);
    let (a, b, _, _) = p.as_tuple();
    let r = (b - a) * s0.y() + a;
    let geometric = if (1.0 - r).abs() > 1e-12 {
        (1.0 - r.powi(n as i32)) / (1.0 - r)
    } else {
        n as f64
    };
    r.powi(n as i32) * s0.x() + (1.0 - b) * s0.y() * geometric
}

/// Limit of the `a = b = 1, alpha != beta` family, the mirror of
/// [`y_invariant_limit`]: `x` never moves and
/// `y* = alpha x0 / (beta - (beta-alpha)x0)`.
pub fn x_invariant_limit(p: &ParamSet, s0: State2) -> Result<ClosedFormLimit, ClosedFormError> {
    let (a, b, alpha, beta) = p.as_tuple();
    if a != 1.0 || b != 1.0 || alpha == beta {
        return Err(ClosedFormError::NotInSubfamily {
            required: "a = b = 1, alpha != beta",
        });
    }
    let ratio = (beta - alpha) * s0.x() + (1.0 - beta);
    if ratio.abs() >= 1.0 {
        return Err(ClosedFormError::HypothesisViolated { ratio });
    }
    let y = alpha * s0.x() / (beta - (beta - alpha) * s0.x());
    Ok(finish(p, s0.x(), y, LimitFormula::XInvariantGeometric))
}

/// Limit of the `b = 1, alpha = 0` family: every trajectory not starting at
/// `(1, 1)` sinks to the origin, both coordinates strictly decreasing.
///
/// The monotone argument needs `a < 1` (otherwise `x` is invariant) and
/// `beta > 0` (otherwise `y` is invariant); those edges are reported as
/// hypothesis violations and belong to the invariant-coordinate machinery.
pub fn corner_limit(p: &ParamSet, s0: State2) -> Result<State2, ClosedFormError> {
    let (a, b, alpha, beta) = p.as_tuple();
    if b != 1.0 || alpha != 0.0 {
        return Err(ClosedFormError::NotInSubfamily {
            required: "b = 1, alpha = 0",
        });
    }
    if a == 1.0 || beta == 0.0 {
        return Err(ClosedFormError::HypothesisViolated { ratio: 1.0 });
    }
    if s0.x() == 1.0 && s0.y() == 1.0 {
        return Err(ClosedFormError::ExcludedInitialPoint {
            x: s0.x(),
            y: s0.y(),
        });
    }
    Ok(State2::new(0.0, 0.0).unwrap())
}

/// Restriction of the diagonal family `a = alpha, b = beta` to the invariant
/// diagonal: `f(x) = (b-a)x^2 + (1+a-b)x`.
pub fn diagonal_restriction(p: &ParamSet, x: f64) -> f64 {
    let (a, b, _, _) = p.as_tuple();
    (b - a) * x * x + (1.0 + a - b) * x
}

/// The logistic parameter of the diagonal family.
pub fn logistic_mu(p: &ParamSet) -> f64 {
    1.0 + p.a() - p.b()
}

/// Defect of the conjugacy `phi(x) = (a-b)/(1+a-b) x` between the diagonal
/// restriction `f` and the logistic map `F_mu(x) = mu x(1-x)`:
/// `|phi(f(x)) - F_mu(phi(x))|`. Identically zero in real arithmetic.
pub fn conjugacy_defect(p: &ParamSet, x: f64) -> Result<f64, ClosedFormError> {
    let (a, b, alpha, beta) = p.as_tuple();
    if a != alpha || b != beta {
        return Err(ClosedFormError::NotInSubfamily {
            required: "a = alpha, b = beta",
        });
    }
    if a == 0.0 && b == 1.0 {
        return Err(ClosedFormError::DegenerateConjugacy);
    }
    let mu = 1.0 + a - b;
    let c = (a - b) / mu;
    let lhs = c * diagonal_restriction(p, x);
    let phi_x = c * x;
    let rhs = mu * phi_x * (1.0 - phi_x);
    Ok((lhs - rhs).abs())
}

/// Limit of the diagonal family `a = alpha, b = beta, a != b`: the origin
/// when `a <= b` (so `mu <= 1`), the corner `(1, 1)` when `a > b`. The
/// attracting corner's opposite is the excluded initial point.
pub fn diagonal_limit(p: &ParamSet, s0: State2) -> Result<State2, ClosedFormError> {
    let (a, b, alpha, beta) = p.as_tuple();
    if a != alpha || b != beta || a == b {
        return Err(ClosedFormError::NotInSubfamily {
            required: "a = alpha, b = beta with a != b",
        });
    }
    if a <= b {
        if s0.x() == 1.0 && s0.y() == 1.0 {
            return Err(ClosedFormError::ExcludedInitialPoint {
                x: s0.x(),
                y: s0.y(),
            });
        }
        Ok(State2::new(0.0, 0.0).unwrap())
    } else {
        if s0.x() == 0.0 && s0.y() == 0.0 {
            return Err(ClosedFormError::ExcludedInitialPoint {
                x: s0.x(),
                y: s0.y(),
            });
        }
        Ok(State2::new(1.0, 1.0).unwrap())
    }
}

/// Outcome counts of a random-trajectory sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RegularitySummary {
    pub draws: u64,
    pub converged: u64,
    pub cycles: u64,
    pub max_iter_reached: u64,
    /// Largest number of iterations any draw needed.
    pub longest_run: u64,
}

impl RegularitySummary {
    fn record(&mut self, outcome: &Outcome, iterations: u64) {
        self.draws += 1;
        self.longest_run = self.longest_run.max(iterations);
        match outcome {
            Outcome::Converged { .. } => self.converged += 1,
            Outcome::Cycle { .. } => self.cycles += 1,
            Outcome::MaxIterReached { .. } => self.max_iter_reached += 1,
        }
    }

    /// Every draw converged to a fixed point.
    pub fn all_converged(&self) -> bool {
        self.converged == self.draws
    }
}

/// Iterate `draws` seeded random `(params, initial)` pairs from a regular
/// subfamily and tally the outcomes. Regularity of the family means every
/// tally lands in `converged`.
pub fn regularity_sweep(
    family: RegularFamily,
    draws: u64,
    seed: u64,
    max_iter: u64,
    tol: f64,
) -> RegularitySummary {
    let mut rng = rng_from_seed(seed);
    let mut summary = RegularitySummary::default();
    for _ in 0..draws {
        let (p, s0) = family_draw(family, &mut rng);
        let traj = iterate(&p, s0, max_iter, tol).expect("sweep arguments are valid");
        summary.record(&traj.outcome, traj.states.len() as u64 - 1);
    }
    summary
}

/// Iterate `draws` seeded random initial points under a fixed parameter set.
pub fn trajectory_sweep(
    p: &ParamSet,
    draws: u64,
    seed: u64,
    max_iter: u64,
    tol: f64,
) -> RegularitySummary {
    let mut rng = rng_from_seed(seed);
    let mut summary = RegularitySummary::default();
    for _ in 0..draws {
        let s0 = uniform_state(&mut rng);
        let traj = iterate(p, s0, max_iter, tol).expect("sweep arguments are valid");
        summary.record(&traj.outcome, traj.states.len() as u64 - 1);
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::iterate_default;

    fn p(a: f64, b: f64, alpha: f64, beta: f64) -> ParamSet {
        ParamSet::new(a, b, alpha, beta).unwrap()
    }

    fn s(x: f64, y: f64) -> State2 {
        State2::new(x, y).unwrap()
    }

    #[test]
    fn detect_examples() {
        assert_eq!(
            detect_subfamily(&p(1.0, 1.0, 0.0, 0.0)),
            SubfamilyTag::Identity
        );
        assert_eq!(
            detect_subfamily(&p(0.0, 0.0, 1.0, 1.0)),
            SubfamilyTag::Involution
        );
        assert_eq!(
            detect_subfamily(&p(0.5, 0.5, 0.2, 0.2)),
            SubfamilyTag::Linear
        );
        assert_eq!(
            detect_subfamily(&p(0.3, 0.7, 0.3, 0.7)),
            SubfamilyTag::Diagonal
        );
        assert_eq!(
            detect_subfamily(&p(0.2, 0.8, 0.0, 0.0)),
            SubfamilyTag::YInvariant
        );
        assert_eq!(
            detect_subfamily(&p(1.0, 1.0, 0.2, 0.8)),
            SubfamilyTag::XInvariant
        );
        assert_eq!(
            detect_subfamily(&p(0.5, 1.0, 0.0, 0.5)),
            SubfamilyTag::Corner
        );
        assert_eq!(
            detect_subfamily(&p(0.4, 0.9, 0.1, 0.2)),
            SubfamilyTag::General
        );
    }

    #[test]
    fn detect_precedence_on_overlaps() {
        // corner slice of the x-invariant family
        assert_eq!(
            detect_subfamily(&p(1.0, 1.0, 0.0, 0.5)),
            SubfamilyTag::Corner
        );
        // corner slice of the y-invariant family
        assert_eq!(
            detect_subfamily(&p(0.5, 1.0, 0.0, 0.0)),
            SubfamilyTag::Corner
        );
        // a = b = alpha = beta is linear, not diagonal
        assert_eq!(
            detect_subfamily(&p(0.5, 0.5, 0.5, 0.5)),
            SubfamilyTag::Linear
        );
    }

    #[test]
    fn linear_limit_example() {
        let r = linear_limit(&p(0.8, 0.8, 0.3, 0.3), s(1.0, 0.0)).unwrap();
        assert!(r.limit.dist_inf(&s(0.6, 0.6)) < 1e-15);
        assert!(r.valid);
    }

    #[test]
    fn linear_limit_fixes_diagonal_points() {
        let r = linear_limit(&p(0.8, 0.8, 0.3, 0.3), s(0.4, 0.4)).unwrap();
        assert!(r.limit.dist_inf(&s(0.4, 0.4)) < 1e-15);
    }

    #[test]
    fn linear_limit_a_equals_alpha_returns_image() {
        let q = p(0.6, 0.6, 0.6, 0.6);
        let z = s(0.9, 0.1);
        let r = linear_limit(&q, z).unwrap();
        assert!(r.limit.dist_inf(&step2(&q, z)) < 1e-15);
    }

    #[test]
    fn linear_limit_degenerate_cases() {
        assert_eq!(
            linear_limit(&p(1.0, 1.0, 0.0, 0.0), s(0.5, 0.5)),
            Err(ClosedFormError::DegenerateDenominator)
        );
        assert!(matches!(
            linear_limit(&p(0.0, 0.0, 1.0, 1.0), s(0.5, 0.6)),
            Err(ClosedFormError::HypothesisViolated { .. })
        ));
        assert!(matches!(
            linear_limit(&p(0.2, 0.3, 0.1, 0.1), s(0.5, 0.5)),
            Err(ClosedFormError::NotInSubfamily { .. })
        ));
    }

    #[test]
    fn linear_limit_agrees_with_iteration() {
        let q = p(0.8, 0.8, 0.3, 0.3);
        let z = s(1.0, 0.0);
        let formula = linear_limit(&q, z).unwrap().limit;
        let traj = iterate(&q, z, 200, 1e-14).unwrap();
        match traj.outcome {
            Outcome::Converged { limit, .. } => assert!(limit.dist_inf(&formula) < 1e-10),
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn aux_sequences_n0_are_definitions() {
        let (xi, eta) = linear_aux_sequences(&p(0.8, 0.8, 0.3, 0.3), s(0.9, 0.2), 0).unwrap();
        assert!((xi - 0.7).abs() < 1e-15);
        assert!((eta - 1.1).abs() < 1e-15);
    }

    #[test]
    fn aux_sequences_first_step() {
        // step2 gives (0.8, 0.3), so xi1 = 0.5 and eta1 = 1.1
        let (xi, eta) = linear_aux_sequences(&p(0.8, 0.8, 0.3, 0.3), s(1.0, 0.0), 1).unwrap();
        assert!((xi - 0.5).abs() < 1e-15);
        assert!((eta - 1.1).abs() < 1e-14);
    }

    #[test]
    fn aux_sequences_limit_consistency() {
        let q = p(0.8, 0.8, 0.3, 0.3);
        let z = s(1.0, 0.0);
        let (xi, eta) = linear_aux_sequences(&q, z, 400).unwrap();
        let x_star = linear_limit(&q, z).unwrap().limit.x();
        assert!(xi.abs() < 1e-14);
        assert!((eta - 2.0 * x_star).abs() < 1e-12);
    }

    #[test]
    fn aux_sequences_match_iterated_states() {
        let q = p(0.8, 0.8, 0.3, 0.3);
        let z = s(1.0, 0.0);
        let traj = iterate(&q, z, 100, 1e-18).unwrap();
        for (n, state) in traj.states.iter().enumerate().take(60) {
            let (xi, eta) = linear_aux_sequences(&q, z, n as u32).unwrap();
            assert!((xi - (state.x() - state.y())).abs() < 1e-13, "xi at n={n}");
            assert!(
                (eta - (state.x() + state.y())).abs() < 1e-13,
                "eta at n={n}"
            );
        }
    }

    #[test]
    fn lyapunov_check_examples() {
        let q = p(0.8, 0.8, 0.3, 0.3);
        let traj = iterate(&q, s(1.0, 0.0), 100, 1e-18).unwrap();
        assert!(lyapunov_check(
            &q,
            &traj.states[..100.min(traj.states.len())]
        ));

        // diagonal starts freeze both functionals
        let traj = iterate(&q, s(0.4, 0.4), 50, 1e-18).unwrap();
        assert!(lyapunov_check(&q, &traj.states));

        // the a < alpha case, oscillating across the diagonal
        let q = p(0.3, 0.3, 0.8, 0.8);
        let traj = iterate(&q, s(0.0, 1.0), 100, 1e-18).unwrap();
        assert!(lyapunov_check(&q, &traj.states));
    }

    #[test]
    fn y_invariant_limit_example() {
        let r = y_invariant_limit(&p(0.2, 0.8, 0.0, 0.0), s(0.9, 0.5)).unwrap();
        assert!(r.limit.dist_inf(&s(0.2, 0.5)) < 1e-15);
        assert!(r.valid);
    }

    #[test]
    fn y_invariant_limit_boundary_values() {
        let q = p(0.2, 0.8, 0.0, 0.0);
        let r = y_invariant_limit(&q, s(0.7, 0.0)).unwrap();
        assert_eq!(r.limit, s(0.0, 0.0));
        let r = y_invariant_limit(&q, s(0.7, 1.0)).unwrap();
        assert!(r.limit.dist_inf(&s(1.0, 1.0)) < 1e-15);
    }

    #[test]
    fn y_invariant_limit_hypothesis_violation() {
        // b = 1, y0 = 1 gives ratio exactly 1
        let q = p(0.3, 1.0, 0.0, 0.0);
        assert!(matches!(
            y_invariant_limit(&q, s(0.5, 1.0)),
            Err(ClosedFormError::HypothesisViolated { ratio }) if ratio == 1.0
        ));
    }

    #[test]
    fn y_invariant_limit_agrees_with_iteration() {
        let q = p(0.2, 0.8, 0.0, 0.0);
        let z = s(0.9, 0.5);
        let formula = y_invariant_limit(&q, z).unwrap().limit;
        let traj = iterate(&q, z, 500, 1e-14).unwrap();
        match traj.outcome {
            Outcome::Converged { limit, .. } => assert!(limit.dist_inf(&formula) < 1e-10),
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn y_invariant_formula_examples() {
        let q = p(0.2, 0.8, 0.0, 0.0);
        let z = s(0.9, 0.5);
        assert_eq!(y_invariant_iterate_formula(&q, z, 0), 0.9);
        assert!((y_invariant_iterate_formula(&q, z, 1) - 0.55).abs() < 1e-15);
        let limit = y_invariant_limit(&q, z).unwrap().limit.x();
        assert!((y_invariant_iterate_formula(&q, z, 200) - limit).abs() < 1e-12);
    }

    #[test]
    fn y_invariant_formula_matches_iteration() {
        let q = p(0.35, 0.85, 0.0, 0.0);
        let z = s(0.62, 0.44);
        let traj = iterate(&q, z, 64, 1e-18).unwrap();
        for (n, state) in traj.states.iter().enumerate() {
            let predicted = y_invariant_iterate_formula(&q, z, n as u32);
            assert!(
                (predicted - state.x()).abs() <= 1e-12 * (n as f64).max(1.0),
                "n = {n}"
            );
            assert_eq!(state.y(), z.y());
        }
    }

    #[test]
    fn x_invariant_limit_example() {
        let r = x_invariant_limit(&p(1.0, 1.0, 0.2, 0.8), s(0.5, 0.9)).unwrap();
        assert!(r.limit.dist_inf(&s(0.5, 0.2)) < 1e-15);
        assert!(r.valid);
    }

    #[test]
    fn x_invariant_limit_boundary_values() {
        let q = p(1.0, 1.0, 0.2, 0.8);
        let r = x_invariant_limit(&q, s(0.0, 0.6)).unwrap();
        assert_eq!(r.limit, s(0.0, 0.0));
        let r = x_invariant_limit(&q, s(1.0, 0.6)).unwrap();
        assert!(r.limit.dist_inf(&s(1.0, 1.0)) < 1e-15);
    }

    #[test]
    fn x_invariant_limit_agrees_with_iteration() {
        let q = p(1.0, 1.0, 0.2, 0.8);
        let z = s(0.5, 0.9);
        let formula = x_invariant_limit(&q, z).unwrap().limit;
        let traj = iterate(&q, z, 500, 1e-14).unwrap();
        match traj.outcome {
            Outcome::Converged { limit, .. } => assert!(limit.dist_inf(&formula) < 1e-10),
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn corner_limit_examples() {
        assert_eq!(
            corner_limit(&p(0.5, 1.0, 0.0, 0.5), s(0.99, 0.99)).unwrap(),
            s(0.0, 0.0)
        );
        assert_eq!(
            corner_limit(&p(0.0, 1.0, 0.0, 1.0), s(0.5, 0.5)).unwrap(),
            s(0.0, 0.0)
        );
        assert!(matches!(
            corner_limit(&p(0.5, 1.0, 0.0, 0.5), s(1.0, 1.0)),
            Err(ClosedFormError::ExcludedInitialPoint { .. })
        ));
    }

    #[test]
    fn corner_limit_invariant_edges_are_rejected() {
        // a = 1 leaves x untouched; beta = 0 leaves y untouched
        assert!(matches!(
            corner_limit(&p(1.0, 1.0, 0.0, 0.5), s(0.5, 0.5)),
            Err(ClosedFormError::HypothesisViolated { .. })
        ));
        assert!(matches!(
            corner_limit(&p(0.5, 1.0, 0.0, 0.0), s(0.5, 0.5)),
            Err(ClosedFormError::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn corner_limit_agrees_with_iteration() {
        let q = p(0.0, 1.0, 0.0, 1.0);
        let traj = iterate(&q, s(0.5, 0.5), 10_000, 1e-13).unwrap();
        match traj.outcome {
            Outcome::Converged { limit, .. } => {
                assert!(limit.dist_inf(&s(0.0, 0.0)) < 1e-12);
            }
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn diagonal_restriction_values() {
        let q = p(0.7, 0.3, 0.7, 0.3);
        assert_eq!(diagonal_restriction(&q, 0.0), 0.0);
        assert_eq!(diagonal_restriction(&q, 1.0), 1.0);
        assert!((diagonal_restriction(&q, 0.5) - 0.6).abs() < 1e-15);
        let q = p(0.3, 0.7, 0.3, 0.7);
        assert!((diagonal_restriction(&q, 0.5) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn diagonal_restriction_matches_step2_on_diagonal() {
        let q = p(0.3, 0.7, 0.3, 0.7);
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            let img = step2(&q, s(x, x));
            let f = diagonal_restriction(&q, x);
            assert!((img.x() - f).abs() < 1e-15);
            assert!((img.y() - f).abs() < 1e-15);
        }
    }

    #[test]
    fn conjugacy_defect_examples() {
        let q = p(0.7, 0.3, 0.7, 0.3);
        assert_eq!(conjugacy_defect(&q, 0.0).unwrap(), 0.0);
        assert!(conjugacy_defect(&q, 0.5).unwrap() < 1e-15);
        assert!(conjugacy_defect(&q, 1.0).unwrap() < 1e-15);
        assert_eq!(
            conjugacy_defect(&p(0.0, 1.0, 0.0, 1.0), 0.5),
            Err(ClosedFormError::DegenerateConjugacy)
        );
    }

    #[test]
    fn diagonal_limit_branches() {
        assert_eq!(
            diagonal_limit(&p(0.3, 0.7, 0.3, 0.7), s(0.9, 0.2)).unwrap(),
            s(0.0, 0.0)
        );
        assert_eq!(
            diagonal_limit(&p(0.7, 0.3, 0.7, 0.3), s(0.1, 0.9)).unwrap(),
            s(1.0, 1.0)
        );
        // a = b routes to the linear family instead
        assert!(matches!(
            diagonal_limit(&p(0.5, 0.5, 0.5, 0.5), s(0.5, 0.5)),
            Err(ClosedFormError::NotInSubfamily { .. })
        ));
        assert!(matches!(
            diagonal_limit(&p(0.3, 0.7, 0.3, 0.7), s(1.0, 1.0)),
            Err(ClosedFormError::ExcludedInitialPoint { .. })
        ));
    }

    #[test]
    fn diagonal_limit_agrees_with_iteration() {
        for (q, z, target) in [
            (p(0.3, 0.7, 0.3, 0.7), s(0.9, 0.2), s(0.0, 0.0)),
            (p(0.7, 0.3, 0.7, 0.3), s(0.1, 0.9), s(1.0, 1.0)),
        ] {
            assert_eq!(diagonal_limit(&q, z).unwrap(), target);
            let traj = iterate_default(&q, z);
            match traj.outcome {
                Outcome::Converged { limit, .. } => {
                    assert!(limit.dist_inf(&target) < 1e-6);
                }
                other => panic!("expected convergence, got {other:?}"),
            }
        }
    }

    #[test]
    fn diagonal_absorbs_in_one_step() {
        let q = p(0.3, 0.7, 0.3, 0.7);
        let first = step2(&q, s(0.85, 0.15));
        assert_eq!(first.x(), first.y());
    }

    #[test]
    fn sweep_smoke_per_family() {
        for family in RegularFamily::ALL {
            let summary = regularity_sweep(family, 25, 3, 1_000_000, 1e-12);
            assert!(summary.all_converged(), "{family:?} sweep: {summary:?}");
        }
    }

    #[test]
    fn trajectory_sweep_counts_swap_cycles() {
        let summary = trajectory_sweep(&p(0.0, 0.0, 1.0, 1.0), 20, 5, 10_000, 1e-12);
        assert_eq!(summary.draws, 20);
        assert_eq!(summary.converged + summary.cycles, 20);
        assert!(summary.cycles > 0);
    }
}
