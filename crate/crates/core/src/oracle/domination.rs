use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::enumerate::{exact_tail_grid, EnumCaps};
use super::montecarlo::{mc_tail_grid, McConfig};
use super::{TailEstimate, TailMethod};
use crate::bounds::BoundKind;
use crate::error::{Error, Result};
use crate::permstat::{bound_components, combine_bound, PermLaw, SquareMatrix};

/// A row is satisfied when `tail <= bound + DOMINATION_TOL`.
pub const DOMINATION_TOL: f64 = 1e-12;

/// Where tail probabilities come from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailSource {
    Exact(EnumCaps),
    MonteCarlo(McConfig),
    /// Enumerate when within the caps, otherwise Monte Carlo.
    Auto {
        caps: EnumCaps,
        mc: McConfig,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominationOptions {
    pub kinds: Vec<BoundKind>,
    pub source: TailSource,
    /// Multiplies every bound before comparison; `1` in normal use.
    pub bound_scale: f64,
}

impl DominationOptions {
    pub fn new(kinds: Vec<BoundKind>, source: TailSource) -> Self {
        DominationOptions {
            kinds,
            source,
            bound_scale: 1.0,
        }
    }
}

/// One `(t, kind)` comparison.
///
/// `tail` is the exact probability or, for Monte Carlo, the upper end of
/// the confidence interval. `bound`, `satisfied` and `margin` are `None`
/// when the bound's precondition fails at this `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominationRow {
    pub t: f64,
    pub kind: BoundKind,
    pub bound: Option<f64>,
    pub tail: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub satisfied: Option<bool>,
    pub margin: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominationReport {
    pub n: usize,
    pub law: String,
    pub tail_method: TailMethod,
    pub trials: u64,
    pub bound_scale: f64,
    pub rows: Vec<DominationRow>,
    pub violations: usize,
    pub not_applicable: usize,
    pub pass: bool,
}

pub const CSV_HEADER: &str = "t,kind,bound,tail,ci_low,ci_high,satisfied,margin";

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl DominationReport {
    /// Rows as CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.t,
                r.kind,
                opt(r.bound),
                r.tail,
                r.ci_low,
                r.ci_high,
                opt(r.satisfied),
                opt(r.margin)
            );
        }
        out
    }
}

fn tails(
    a: &SquareMatrix,
    law: &PermLaw,
    grid: &[f64],
    source: &TailSource,
) -> Result<Vec<TailEstimate>> {
    match source {
        TailSource::Exact(caps) => exact_tail_grid(a, law, grid, caps),
        TailSource::MonteCarlo(cfg) => mc_tail_grid(a, law, grid, cfg),
        TailSource::Auto { caps, mc } => match exact_tail_grid(a, law, grid, caps) {
            Err(Error::Resource { .. }) => mc_tail_grid(a, law, grid, mc),
            other => other,
        },
    }
}

/// Compare tail probabilities of `Y - mu` with each bound over `grid`.
///
/// Rows are ordered by `t`, then by kind in the order given. The report
/// passes when no applicable row is violated.
pub fn validate_domination(
    a: &SquareMatrix,
    law: &PermLaw,
    grid: &[f64],
    opts: &DominationOptions,
) -> Result<DominationReport> {
    if opts.kinds.is_empty() {
        return Err(Error::domain("no bound kinds requested"));
    }
    if !(opts.bound_scale.is_finite() && opts.bound_scale > 0.0) {
        return Err(Error::domain(format!(
            "bound scale must be > 0, got {}",
            opts.bound_scale
        )));
    }
    let components = bound_components(a, law)?;
    let estimates = tails(a, law, grid, &opts.source)?;

    let mut rows = Vec::with_capacity(grid.len() * opts.kinds.len());
    for (&t, est) in grid.iter().zip(&estimates) {
        let tail = match est.method {
            TailMethod::Exact => est.point,
            TailMethod::MonteCarlo => est.ci_high,
        };
        for &kind in &opts.kinds {
            let value = combine_bound(&components, t, kind)?.scaled(opts.bound_scale);
            let bound = value.clamped;
            rows.push(DominationRow {
                t,
                kind,
                bound,
                tail,
                ci_low: est.ci_low,
                ci_high: est.ci_high,
                satisfied: bound.map(|b| tail <= b + DOMINATION_TOL),
                margin: bound.map(|b| b - tail),
            });
        }
    }

    let violations = rows.iter().filter(|r| r.satisfied == Some(false)).count();
    let not_applicable = rows.iter().filter(|r| r.satisfied.is_none()).count();
    let first = estimates.first();
    Ok(DominationReport {
        n: a.n(),
        law: law.to_string(),
        tail_method: first.map_or(TailMethod::Exact, |e| e.method),
        trials: first.map_or(0, |e| e.trials),
        bound_scale: opts.bound_scale,
        rows,
        violations,
        not_applicable,
        pass: violations == 0,
    })
}
