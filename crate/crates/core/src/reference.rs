//! The published reference table of corner eigenvalue magnitudes for five
//! example parameter sets, together with a recomputation facility.
//!
//! The recomputed `(1, 1)` magnitudes are known to disagree with the
//! published pairs: the published values do not satisfy their own generating
//! formula (their products match `|det J(1,1)|` but trace consistency
//! fails), so discrepancies there are flagged rather than treated as errors.
//! The published `(0, 0)` pair of the last row has the same defect: its
//! second entry (0.025) is inconsistent with the published closed form,
//! which gives 0.250.

use crate::fixed_points::{stability_at, Stability};
use crate::params::ParamSet;
use crate::state::State2;

/// Discrepancies above this are flagged (the published table prints three
/// decimals).
pub const PUBLISHED_PRECISION: f64 = 1e-3;

/// One row of the published table.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceRow {
    pub params: (f64, f64, f64, f64),
    /// Published `(|lambda_1|, |lambda_2|)` at the origin.
    pub published_origin: (f64, f64),
    /// Published `(|lambda_1|, |lambda_2|)` at `(1, 1)`.
    pub published_corner: (f64, f64),
    /// Published qualitative types at the origin and at `(1, 1)`.
    pub published_types: (&'static str, &'static str),
}

/// The five published rows.
pub const REFERENCE_ROWS: [ReferenceRow; 5] = [
    ReferenceRow {
        params: (0.67, 0.97, 0.896, 0.908),
        published_origin: (0.713, 0.0487),
        published_corner: (0.836, 0.238),
        published_types: ("attracting", "attracting"),
    },
    ReferenceRow {
        params: (0.173, 0.718, 0.027, 0.927),
        published_origin: (0.224, 0.022),
        published_corner: (1.210, 1.210),
        published_types: ("attracting", "repelling"),
    },
    ReferenceRow {
        params: (0.487, 0.329, 0.0017, 0.0675),
        published_origin: (0.935, 0.484),
        published_corner: (1.521, 0.193),
        published_types: ("attracting", "saddle"),
    },
    ReferenceRow {
        params: (0.345, 0.6244, 0.829, 0.185),
        published_origin: (1.185, 0.025),
        published_corner: (0.777, 0.0185),
        published_types: ("saddle", "attracting"),
    },
    ReferenceRow {
        params: (0.422, 0.786, 0.584, 0.024),
        published_origin: (1.148, 0.025),
        published_corner: (1.422, 0.220),
        published_types: ("saddle", "saddle"),
    },
];

/// Recomputed magnitudes and classes for one row, with recomputed-minus-
/// published deltas.
#[derive(Debug, Clone)]
pub struct RowRecomputation {
    pub row: ReferenceRow,
    pub origin_magnitudes: (f64, f64),
    pub corner_magnitudes: (f64, f64),
    pub origin_delta: (f64, f64),
    pub corner_delta: (f64, f64),
    pub origin_class: Stability,
    pub corner_class: Stability,
    /// Any origin delta beyond [`PUBLISHED_PRECISION`].
    pub origin_flagged: bool,
    /// Any corner delta beyond [`PUBLISHED_PRECISION`] (expected: the
    /// published corner column is internally inconsistent).
    pub corner_flagged: bool,
}

impl ReferenceRow {
    pub fn param_set(&self) -> ParamSet {
        let (a, b, alpha, beta) = self.params;
        ParamSet::new(a, b, alpha, beta).expect("published rows are in range")
    }

    pub fn recompute(&self) -> RowRecomputation {
        let p = self.param_set();
        let origin = stability_at(&p, State2::new(0.0, 0.0).unwrap());
        let corner = stability_at(&p, State2::new(1.0, 1.0).unwrap());
        let origin_magnitudes = (origin.magnitudes[0], origin.magnitudes[1]);
        let corner_magnitudes = (corner.magnitudes[0], corner.magnitudes[1]);
        let origin_delta = (
            origin_magnitudes.0 - self.published_origin.0,
            origin_magnitudes.1 - self.published_origin.1,
        );
        let corner_delta = (
            corner_magnitudes.0 - self.published_corner.0,
            corner_magnitudes.1 - self.published_corner.1,
        );
        RowRecomputation {
            row: *self,
            origin_magnitudes,
            corner_magnitudes,
            origin_delta,
            corner_delta,
            origin_class: origin.class,
            corner_class: corner.class,
            origin_flagged: origin_delta.0.abs() > PUBLISHED_PRECISION
                || origin_delta.1.abs() > PUBLISHED_PRECISION,
            corner_flagged: corner_delta.0.abs() > PUBLISHED_PRECISION
                || corner_delta.1.abs() > PUBLISHED_PRECISION,
        }
    }
}

/// Recompute the full table.
pub fn recompute_table() -> Vec<RowRecomputation> {
    REFERENCE_ROWS.iter().map(|r| r.recompute()).collect()
}
