//! Seeded Monte Carlo tail estimates with Clopper-Pearson intervals.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{class_values, closed_form_mean, law_mean, EnumCaps, TIE_TOL};
use super::stats::clopper_pearson;
use super::{TailEstimate, TailMethod};
use crate::error::{Error, Result};
use crate::permstat::{PermLaw, SquareMatrix};
use crate::rng::{chunks, stream_rng};

/// Monte Carlo settings.
///
/// Draws are split into fixed-size chunks and chunk `k` uses stream `k` of
/// `seed`, so estimates depend on `(seed, trials)` only and not on
/// `threads`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    /// Two-sided confidence level of the interval.
    pub level: f64,
    /// Worker threads; `0` uses the global pool.
    #[serde(skip)]
    pub threads: usize,
}

impl McConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        McConfig {
            trials,
            seed,
            level: 0.999,
            threads: 0,
        }
    }
}

/// Run `work` on a pool with the requested number of threads.
pub(crate) fn with_threads<T: Send>(threads: usize, work: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(work());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::domain(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(work))
}

/// Estimates of `P(Y - mu >= t)` for each `t`, all from the same draws.
pub fn mc_tail_grid(
    a: &SquareMatrix,
    law: &PermLaw,
    grid: &[f64],
    cfg: &McConfig,
) -> Result<Vec<TailEstimate>> {
    if cfg.trials == 0 {
        return Err(Error::domain("Monte Carlo needs trials >= 1"));
    }
    let n = a.n();
    law.validate(n)?;
    let mu = match closed_form_mean(a, law)? {
        Some(mu) => mu,
        // classes with fixed points: centre at the exact class mean
        None => law_mean(a, law, &class_values(a, law, &EnumCaps::default())?)?,
    };
    let thresholds: Vec<f64> = grid
        .iter()
        .map(|&t| t - TIE_TOL * (1.0 + mu.abs() + t.abs()))
        .collect();

    let plan = chunks(cfg.trials);
    let per_chunk: Vec<Vec<u64>> = with_threads(cfg.threads, || {
        plan.par_iter()
            .map(|&(stream, count)| {
                let mut rng = stream_rng(cfg.seed, stream);
                let mut hits = vec![0u64; thresholds.len()];
                for _ in 0..count {
                    let p = law.sample(n, &mut rng).expect("validated law");
                    let dev = a.stat_unchecked(p.images()) - mu;
                    for (h, &thr) in hits.iter_mut().zip(&thresholds) {
                        if dev >= thr {
                            *h += 1;
                        }
                    }
                }
                hits
            })
            .collect()
    })?;

    let mut totals = vec![0u64; thresholds.len()];
    for hits in &per_chunk {
        for (t, h) in totals.iter_mut().zip(hits) {
            *t += h;
        }
    }
    totals
        .into_iter()
        .map(|hits| {
            let (ci_low, ci_high) = clopper_pearson(hits, cfg.trials, cfg.level)?;
            Ok(TailEstimate {
                point: hits as f64 / cfg.trials as f64,
                ci_low,
                ci_high,
                trials: cfg.trials,
                method: TailMethod::MonteCarlo,
            })
        })
        .collect()
}

/// Single-threshold version of [`mc_tail_grid`].
pub fn mc_tail(a: &SquareMatrix, law: &PermLaw, t: f64, cfg: &McConfig) -> Result<TailEstimate> {
    Ok(mc_tail_grid(a, law, &[t], cfg)?.remove(0))
}
