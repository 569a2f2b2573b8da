//! Seeded random draws of parameters and states, including
//! hypothesis-constrained draws for each regular subfamily.
//!
//! All draws go through an explicitly seeded ChaCha generator so sweeps are
//! reproducible across runs and platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::params::ParamSet;
use crate::state::State2;

/// Margin keeping geometric contraction rates away from 1 in subfamily
/// draws. Rates within `RATE_MARGIN` of 1 would need more than the default
/// iteration budget to settle, without exercising anything new.
pub const RATE_MARGIN: f64 = 1e-4;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_params<R: Rng>(rng: &mut R) -> ParamSet {
    ParamSet::new(rng.gen(), rng.gen(), rng.gen(), rng.gen()).expect("draws lie in [0, 1)")
}

pub fn uniform_state<R: Rng>(rng: &mut R) -> State2 {
    State2::new(rng.gen(), rng.gen()).expect("draws lie in [0, 1)")
}

/// A state with both coordinates in `[margin, 1 - margin]`.
pub fn interior_state<R: Rng>(rng: &mut R, margin: f64) -> State2 {
    let span = 1.0 - 2.0 * margin;
    State2::new(
        margin + rng.gen::<f64>() * span,
        margin + rng.gen::<f64>() * span,
    )
    .expect("interior draws lie in [0, 1]")
}

/// Parameters satisfying the fixed-curve condition exactly, built by solving
/// `beta = alpha(1-b) / (1-a)` for random `a, b, alpha`.
pub fn continuum_params<R: Rng>(rng: &mut R) -> ParamSet {
    loop {
        let a = rng.gen::<f64>() * (1.0 - 1e-3);
        let b = rng.gen::<f64>();
        let alpha = rng.gen::<f64>();
        let beta = alpha * (1.0 - b) / (1.0 - a);
        if beta <= 1.0 {
            return ParamSet::new(a, b, alpha, beta).expect("constructed in range");
        }
    }
}

/// Parameters violating the fixed-curve condition by at least `1e-6`, so a
/// grid scan can distinguish "no interior fixed point" from rounding.
pub fn isolated_params<R: Rng>(rng: &mut R) -> ParamSet {
    loop {
        let p = uniform_params(rng);
        let gap = p.alpha() * (1.0 - p.b()) - p.beta() * (1.0 - p.a());
        if gap.abs() >= 1e-6 {
            return p;
        }
    }
}

/// The five parameter subfamilies for which every trajectory converges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularFamily {
    /// `a = b, alpha = beta` (the operator is linear).
    Linear,
    /// `alpha = beta = 0, a != b` (`y` is invariant).
    YInvariant,
    /// `a = b = 1, alpha != beta` (`x` is invariant).
    XInvariant,
    /// `b = 1, alpha = 0` (everything sinks to the origin).
    Corner,
    /// `a = alpha, b = beta` (the diagonal absorbs in one step).
    Diagonal,
}

impl RegularFamily {
    pub const ALL: [RegularFamily; 5] = [
        RegularFamily::Linear,
        RegularFamily::YInvariant,
        RegularFamily::XInvariant,
        RegularFamily::Corner,
        RegularFamily::Diagonal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RegularFamily::Linear => "linear",
            RegularFamily::YInvariant => "y-invariant",
            RegularFamily::XInvariant => "x-invariant",
            RegularFamily::Corner => "corner",
            RegularFamily::Diagonal => "diagonal",
        }
    }
}

/// Draw a `(params, initial state)` pair satisfying the family's hypotheses,
/// with contraction rates kept at least [`RATE_MARGIN`] away from 1 and
/// excluded endpoints resampled.
pub fn family_draw<R: Rng>(family: RegularFamily, rng: &mut R) -> (ParamSet, State2) {
    match family {
        RegularFamily::Linear => loop {
            let u = rng.gen::<f64>();
            let v = rng.gen::<f64>();
            if (u - v).abs() <= 1.0 - RATE_MARGIN {
                let p = ParamSet::new(u, u, v, v).expect("in range");
                return (p, uniform_state(rng));
            }
        },
        RegularFamily::YInvariant => loop {
            let a = rng.gen::<f64>();
            let b = rng.gen::<f64>();
            if a == b {
                continue;
            }
            let s = uniform_state(rng);
            let ratio = (b - a) * s.y() + a;
            if ratio <= 1.0 - RATE_MARGIN {
                let p = ParamSet::new(a, b, 0.0, 0.0).expect("in range");
                return (p, s);
            }
        },
        RegularFamily::XInvariant => loop {
            let alpha = rng.gen::<f64>();
            let beta = rng.gen::<f64>();
            if alpha == beta {
                continue;
            }
            let s = uniform_state(rng);
            let ratio = (beta - alpha) * s.x() + (1.0 - beta);
            if ratio <= 1.0 - RATE_MARGIN {
                let p = ParamSet::new(1.0, 1.0, alpha, beta).expect("in range");
                return (p, s);
            }
        },
        RegularFamily::Corner => {
            let a = rng.gen::<f64>() * (1.0 - RATE_MARGIN);
            let beta = RATE_MARGIN + rng.gen::<f64>() * (1.0 - RATE_MARGIN);
            let p = ParamSet::new(a, 1.0, 0.0, beta).expect("in range");
            (p, interior_state(rng, 1e-3))
        }
        RegularFamily::Diagonal => loop {
            let u = rng.gen::<f64>();
            let v = rng.gen::<f64>();
            if (u - v).abs() < RATE_MARGIN {
                continue;
            }
            let p = ParamSet::new(u, v, u, v).expect("in range");
            let excluded = if u <= v {
                State2::new(1.0, 1.0).unwrap()
            } else {
                State2::new(0.0, 0.0).unwrap()
            };
            let s = uniform_state(rng);
            if s != excluded {
                return (p, s);
            }
        },
    }
}
