//! Serializable record types shared by the subcommands, with their CSV
//! projections.

use serde::Serialize;

use crate::output::{csv_f64, csv_opt, csv_opt_f64};

#[derive(Debug, Serialize)]
pub struct StepRecord {
    pub x: f64,
    pub y: f64,
}

pub const STEP_CSV_HEADER: &str = "x,y";

impl StepRecord {
    pub fn csv_row(&self) -> String {
        format!("{},{}", csv_f64(self.x), csv_f64(self.y))
    }
}

/// One trajectory iterate.
#[derive(Debug, Serialize)]
pub struct IterateRecord {
    pub n: u64,
    pub x: f64,
    pub y: f64,
}

/// Terminal trajectory record.
#[derive(Debug, Serialize)]
pub struct TerminalRecord {
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    pub steps: u64,
}

pub const TRAJECTORY_CSV_HEADER: &str = "n,x,y,outcome,period,steps";

impl IterateRecord {
    pub fn csv_row(&self) -> String {
        format!("{},{},{},,,", self.n, csv_f64(self.x), csv_f64(self.y))
    }
}

impl TerminalRecord {
    pub fn csv_row(&self) -> String {
        format!(
            ",,,{},{},{}",
            self.outcome,
            csv_opt(self.period),
            self.steps
        )
    }
}

/// One basin-portrait grid start.
#[derive(Debug, Serialize)]
pub struct PortraitRecord {
    pub x0: f64,
    pub y0: f64,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_lim: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_lim: Option<f64>,
    pub steps: u64,
    pub subfamily: &'static str,
}

pub const PORTRAIT_CSV_HEADER: &str = "x0,y0,outcome,x_lim,y_lim,steps,subfamily";

impl PortraitRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            csv_f64(self.x0),
            csv_f64(self.y0),
            self.outcome,
            csv_opt_f64(self.x_lim),
            csv_opt_f64(self.y_lim),
            self.steps,
            self.subfamily
        )
    }
}

/// Heterogeneous fixed-point report rows: one locus record, then witnesses,
/// then corner stability records.
#[derive(Debug, Serialize)]
pub struct FixedPointRecord {
    pub record: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub every_point_fixed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period_two: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denominator_plus_beta: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped_y: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l1_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l1_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l2_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l2_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l1_mag: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l2_mag: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_gap: Option<f64>,
}

pub const FIXED_POINTS_CSV_HEADER: &str = "record,kind,every_point_fixed,period_two,\
denominator_plus_beta,skipped_y,x,y,residual,l1_re,l1_im,l2_re,l2_im,l1_mag,l2_mag,class,\
closed_form_gap";

impl FixedPointRecord {
    pub fn empty(record: &'static str) -> Self {
        Self {
            record,
            kind: None,
            every_point_fixed: None,
            period_two: None,
            denominator_plus_beta: None,
            skipped_y: None,
            x: None,
            y: None,
            residual: None,
            l1_re: None,
            l1_im: None,
            l2_re: None,
            l2_im: None,
            l1_mag: None,
            l2_mag: None,
            class: None,
            closed_form_gap: None,
        }
    }

    pub fn csv_row(&self) -> String {
        let skipped = self
            .skipped_y
            .as_ref()
            .map(|v| v.iter().map(|y| csv_f64(*y)).collect::<Vec<_>>().join(";"))
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.record,
            csv_opt(self.kind),
            csv_opt(self.every_point_fixed),
            csv_opt(self.period_two),
            csv_opt(self.denominator_plus_beta),
            skipped,
            csv_opt_f64(self.x),
            csv_opt_f64(self.y),
            csv_opt_f64(self.residual),
            csv_opt_f64(self.l1_re),
            csv_opt_f64(self.l1_im),
            csv_opt_f64(self.l2_re),
            csv_opt_f64(self.l2_im),
            csv_opt_f64(self.l1_mag),
            csv_opt_f64(self.l2_mag),
            csv_opt(self.class),
            csv_opt_f64(self.closed_form_gap),
        )
    }
}

/// Single-row subfamily analysis report.
#[derive(Debug, Serialize)]
pub struct SubfamilyRecord {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    pub subfamily: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_formula: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_valid: Option<bool>,
    /// Worst |closed form - iteration| over the verification draws.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_max_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lyapunov_directions_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_coordinate_exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugacy_max_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absorption_exact: Option<bool>,
    pub draws: u64,
    pub converged: u64,
    pub cycles: u64,
    pub max_iter_reached: u64,
    pub longest_run: u64,
    pub verdict: &'static str,
}

pub const SUBFAMILY_CSV_HEADER: &str = "a,b,alpha,beta,subfamily,mu,limit_formula,limit_x,\
limit_y,limit_valid,closed_form_max_gap,lyapunov_directions_ok,invariant_coordinate_exact,\
conjugacy_max_defect,absorption_exact,draws,converged,cycles,max_iter_reached,longest_run,\
verdict";

impl SubfamilyRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            csv_f64(self.a),
            csv_f64(self.b),
            csv_f64(self.alpha),
            csv_f64(self.beta),
            self.subfamily,
            csv_opt_f64(self.mu),
            csv_opt(self.limit_formula),
            csv_opt_f64(self.limit_x),
            csv_opt_f64(self.limit_y),
            csv_opt(self.limit_valid),
            csv_opt_f64(self.closed_form_max_gap),
            csv_opt(self.lyapunov_directions_ok),
            csv_opt(self.invariant_coordinate_exact),
            csv_opt_f64(self.conjugacy_max_defect),
            csv_opt(self.absorption_exact),
            self.draws,
            self.converged,
            self.cycles,
            self.max_iter_reached,
            self.longest_run,
            self.verdict,
        )
    }
}
