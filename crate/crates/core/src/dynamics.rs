//! The evolution operator and trajectory iteration.

use crate::error::IterationError;
use crate::params::ParamSet;
use crate::state::{State2, State4};

/// Default sup-norm step tolerance for convergence detection.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration budget.
pub const DEFAULT_MAX_ITER: u64 = 1_000_000;
/// Number of consecutive sub-tolerance steps required before a trajectory is
/// declared convergent. Guards against a single small step on a slow,
/// non-hyperbolic approach.
pub const CONSECUTIVE_SMALL_STEPS: u64 = 5;
/// Per-coordinate tolerance for recognizing a repeated state.
pub const CYCLE_TOL: f64 = 1e-12;
/// Largest cycle period searched for. Period 2 is the only one the family
/// actually produces, the rest of the window is defensive.
pub const CYCLE_WINDOW: usize = 8;
/// A `Converged` limit satisfies `dist_inf(step2(p, limit), limit) <
/// FIXED_POINT_TOL_FACTOR * tol`.
pub const FIXED_POINT_TOL_FACTOR: f64 = 100.0;

/// Coordinates may leave `[0, 1]` by at most this much before the step is
/// treated as an internal consistency failure. The map is exactly
/// simplex-preserving in real arithmetic, so anything beyond rounding noise
/// is a bug.
const CLAMP_GUARD: f64 = 1e-12;

fn clamp_unit(v: f64) -> f64 {
    if v < 0.0 {
        assert!(v >= -CLAMP_GUARD, "closure violation: coordinate {v:e}");
        0.0
    } else if v > 1.0 {
        assert!(
            v <= 1.0 + CLAMP_GUARD,
            "closure violation: coordinate {v:e}"
        );
        1.0
    } else {
        v
    }
}

/// Evaluate both coordinate polynomials without any domain checks or
/// clamping. Useful for finite-difference derivative checks, which probe the
/// map slightly off a point.
///
/// The term order is significant: evaluated exactly this way, the identity
/// and swap parameter sets act exactly, `alpha = beta = 0` leaves `y`
/// bit-exact, and `a = b = 1` leaves `x` bit-exact.
pub fn step2_raw(p: &ParamSet, x: f64, y: f64) -> (f64, f64) {
    let (a, b, alpha, beta) = p.as_tuple();
    let xp = (b - a) * x * y + a * x + (1.0 - b) * y;
    let yp = (beta - alpha) * x * y + alpha * x + (1.0 - beta) * y;
    (xp, yp)
}

/// One application of the operator in reduced coordinates.
pub fn step2(p: &ParamSet, s: State2) -> State2 {
    // (0,0) and (1,1) are fixed points of every member of the family.
    // Short-circuiting them keeps the corners exact even for parameter
    // values whose rounding would leave a one-ulp residual.
    let (x, y) = (s.x(), s.y());
    if (x == 0.0 && y == 0.0) || (x == 1.0 && y == 1.0) {
        return s;
    }
    let (xp, yp) = step2_raw(p, x, y);
    State2::raw(clamp_unit(xp), clamp_unit(yp))
}

/// One application of the operator on the full simplex product.
pub fn step4(p: &ParamSet, s: State4) -> State4 {
    let (a, b, alpha, beta) = p.as_tuple();
    let (x1, x2, y1, y2) = (s.x1(), s.x2(), s.y1(), s.y2());
    let mut x1p = x1 * y1 + a * x1 * y2 + (1.0 - b) * x2 * y1;
    let mut x2p = x2 * y2 + b * x2 * y1 + (1.0 - a) * x1 * y2;
    let mut y1p = x1 * y1 + alpha * x1 * y2 + (1.0 - beta) * x2 * y1;
    let mut y2p = x2 * y2 + beta * x2 * y1 + (1.0 - alpha) * x1 * y2;
    // The marginal sums are exactly (x1+x2)(y1+y2) = 1 in real arithmetic;
    // renormalize only if rounding drifted beyond the simplex tolerance.
    let sx = x1p + x2p;
    if (sx - 1.0).abs() > crate::state::MARGINAL_TOL {
        x1p /= sx;
        x2p /= sx;
    }
    let sy = y1p + y2p;
    if (sy - 1.0).abs() > crate::state::MARGINAL_TOL {
        y1p /= sy;
        y2p /= sy;
    }
    State4::raw(x1p, x2p, y1p, y2p)
}

/// How a finite trajectory ended.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// The step size stayed below `tol` for [`CONSECUTIVE_SMALL_STEPS`]
    /// iterations. `limit` is the final iterate (no polishing); `steps` is
    /// the number of iterations before the settled window began.
    Converged { limit: State2, steps: u64 },
    /// A state recurred at distance `period >= 2` and the recurrence was
    /// confirmed as a genuine orbit rather than a damped oscillation.
    /// `states` holds one full period, oldest first.
    Cycle { period: usize, states: Vec<State2> },
    /// The iteration budget ran out.
    MaxIterReached { last: State2 },
}

impl Outcome {
    pub fn is_converged(&self) -> bool {
        matches!(self, Outcome::Converged { .. })
    }
}

/// A computed trajectory: the initial point, every visited state (including
/// the initial one) and the terminating outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub initial: State2,
    pub states: Vec<State2>,
    pub outcome: Outcome,
}

/// Relative tolerance when matching per-step displacement magnitudes across
/// two consecutive candidate periods. A genuine cycle repeats them exactly;
/// a damped oscillation contracts them and is rejected.
const CYCLE_PROFILE_RTOL: f64 = 1e-9;

/// Look for a confirmed cycle ending at the last state of `states`.
fn detect_cycle(states: &[State2]) -> Option<usize> {
    let i = states.len() - 1;
    for period in 2..=CYCLE_WINDOW {
        // Confirmation compares displacements over two full periods.
        if i < 2 * period {
            break;
        }
        if states[i].dist_inf(&states[i - period]) >= CYCLE_TOL {
            continue;
        }
        let mut max_disp = 0.0f64;
        let mut profile_ok = true;
        for k in 0..period {
            let recent = states[i - k].dist_inf(&states[i - k - 1]);
            let earlier = states[i - k - period].dist_inf(&states[i - k - period - 1]);
            max_disp = max_disp.max(recent);
            if (recent - earlier).abs() > CYCLE_PROFILE_RTOL * recent.max(earlier) {
                profile_ok = false;
                break;
            }
        }
        // A shrinking or near-stationary orbit is convergence in progress,
        // not a cycle.
        if profile_ok && max_disp > 10.0 * CYCLE_TOL {
            return Some(period);
        }
    }
    None
}

/// Iterate the operator from `s0`.
///
/// Declares `Converged` once the sup-norm step stays below `tol` for
/// [`CONSECUTIVE_SMALL_STEPS`] consecutive iterations, `Cycle` when a state
/// recurs with confirmed period in `2..=CYCLE_WINDOW`, and `MaxIterReached`
/// otherwise.
pub fn iterate(
    p: &ParamSet,
    s0: State2,
    max_iter: u64,
    tol: f64,
) -> Result<Trajectory, IterationError> {
    if max_iter < 1 {
        return Err(IterationError::InvalidMaxIter);
    }
    if tol <= 0.0 || !tol.is_finite() {
        return Err(IterationError::InvalidTol(tol));
    }

    let mut states = Vec::with_capacity(64.min(max_iter as usize + 1));
    states.push(s0);
    let mut small_streak = 0u64;

    for _ in 0..max_iter {
        let current = *states.last().expect("trajectory is never empty");
        let next = step2(p, current);
        states.push(next);
        if next.dist_inf(&current) < tol {
            small_streak += 1;
            if small_streak >= CONSECUTIVE_SMALL_STEPS {
                let steps = (states.len() as u64 - 1) - CONSECUTIVE_SMALL_STEPS;
                return Ok(Trajectory {
                    initial: s0,
                    outcome: Outcome::Converged { limit: next, steps },
                    states,
                });
            }
        } else {
            small_streak = 0;
            if let Some(period) = detect_cycle(&states) {
                let end = states.len() - 1;
                let cycle = states[end - period..end].to_vec();
                return Ok(Trajectory {
                    initial: s0,
                    outcome: Outcome::Cycle {
                        period,
                        states: cycle,
                    },
                    states,
                });
            }
        }
    }

    let last = *states.last().expect("trajectory is never empty");
    Ok(Trajectory {
        initial: s0,
        outcome: Outcome::MaxIterReached { last },
        states,
    })
}

/// [`iterate`] with the default budget and tolerance.
pub fn iterate_default(p: &ParamSet, s0: State2) -> Trajectory {
    iterate(p, s0, DEFAULT_MAX_ITER, DEFAULT_TOL).expect("default arguments are valid")
}
