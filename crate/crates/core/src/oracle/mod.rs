//! Ground truth for the bounds: exact enumeration, Monte Carlo with
//! Clopper-Pearson intervals, Chernoff optimisation, domination reports and
//! the expected-variance experiment.

mod chernoff;
mod domination;
mod enumerate;
mod experiment;
mod montecarlo;
mod stats;

pub use chernoff::chernoff_oracle;
pub use domination::{
    validate_domination, DominationOptions, DominationReport, DominationRow, TailSource,
    CSV_HEADER, DOMINATION_TOL,
};
pub use enumerate::{
    class_values, closed_form_mean, exact_moments, exact_tail, exact_tail_grid,
    for_each_fpf_involution, for_each_of_cycle_type, for_each_permutation, law_mean, ClassValues,
    EnumCaps, TIE_TOL,
};
pub use experiment::{expected_variance_experiment, EntryLaw, ExperimentReport};
pub use montecarlo::{mc_tail, mc_tail_grid, McConfig};
pub use stats::{chi_square_gof, clopper_pearson, dkw_epsilon, ks_distance, ChiSquareTest};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMethod {
    Exact,
    MonteCarlo,
}

impl TailMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TailMethod::Exact => "exact",
            TailMethod::MonteCarlo => "monte_carlo",
        }
    }
}

/// An estimate of `P(Y - mu >= t)`.
///
/// Exact estimates have `ci_low == point == ci_high`; `trials` is then the
/// number of enumerated permutations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub method: TailMethod,
}

impl TailEstimate {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }
}
