//! Small statistical helpers used by the oracles and the test suites.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::beta::beta_reg;

use crate::error::{Error, Result};

/// Quantile of `Beta(a, b)` by bisection on the regularised incomplete beta.
fn beta_quantile(p: f64, a: f64, b: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if beta_reg(a, b, mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exact (Clopper-Pearson) two-sided interval for a binomial proportion.
pub fn clopper_pearson(successes: u64, trials: u64, level: f64) -> Result<(f64, f64)> {
    if trials == 0 || successes > trials {
        return Err(Error::domain(format!(
            "need 0 <= successes <= trials and trials >= 1, got {successes}/{trials}"
        )));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain(format!(
            "confidence level must be in (0, 1), got {level}"
        )));
    }
    let alpha = 1.0 - level;
    let (x, n) = (successes as f64, trials as f64);
    let lo = if successes == 0 {
        0.0
    } else {
        beta_quantile(alpha / 2.0, x, n - x + 1.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        beta_quantile(1.0 - alpha / 2.0, x + 1.0, n - x)
    };
    Ok((lo, hi))
}

/// Half-width of the DKW band: `sqrt(ln(2 / alpha) / (2n))`.
pub fn dkw_epsilon(n: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt()
}

/// `sup_x |F_n(x) - F(x)|` for sorted samples and a continuous CDF.
pub fn ks_distance(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

/// Pearson goodness-of-fit test of observed counts against probabilities.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> Result<ChiSquareTest> {
    if observed.len() != probs.len() || observed.len() < 2 {
        return Err(Error::domain("chi-square test needs >= 2 matching classes"));
    }
    let total: u64 = observed.iter().sum();
    let n = total as f64;
    let statistic = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = n * p;
            (o as f64 - e).powi(2) / e
        })
        .sum::<f64>();
    let df = observed.len() - 1;
    let dist = ChiSquared::new(df as f64).map_err(|e| Error::domain(e.to_string()))?;
    Ok(ChiSquareTest {
        statistic,
        df,
        p_value: dist.sf(statistic),
    })
}
