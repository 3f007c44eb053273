//! Monte Carlo check of `E[sigma_A^2] = (n - 1) Var(U)` and
//! `E[mu_A] = n E[U]` for matrices with iid entries `U` in `[0, 1]`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permstat::{moments_uniform, SquareMatrix};
use crate::rng::{chunks, stream_rng};
use crate::zerobias::DiscreteDist;

/// Law of the iid matrix entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryLaw {
    Uniform01,
    Discrete(DiscreteDist),
}

impl EntryLaw {
    fn mean_var(&self) -> (f64, f64) {
        match self {
            EntryLaw::Uniform01 => (0.5, 1.0 / 12.0),
            EntryLaw::Discrete(d) => {
                let m = d.moments();
                (m.mean, m.variance)
            }
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            EntryLaw::Uniform01 => rng.random(),
            EntryLaw::Discrete(d) => d.sample(rng),
        }
    }
}

/// Count, mean and sum of squared deviations; merged in a fixed order.
#[derive(Clone, Copy, Debug, Default)]
struct Running {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Running {
    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let d = x - self.mean;
        self.mean += d / self.count;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Running) -> Running {
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let d = other.mean - self.mean;
        Running {
            count,
            mean: self.mean + d * other.count / count,
            m2: self.m2 + other.m2 + d * d * self.count * other.count / count,
        }
    }

    fn std_error(&self) -> f64 {
        if self.count < 2.0 {
            return f64::NAN;
        }
        (self.m2 / (self.count - 1.0) / self.count).sqrt()
    }
}

fn z_score(mean: f64, target: f64, se: f64) -> f64 {
    let diff = mean - target;
    if se > 0.0 {
        diff / se
    } else if diff.abs() <= 1e-12 * (1.0 + target.abs()) {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub reps: u64,
    pub seed: u64,
    pub mean_sigma2: f64,
    pub se_sigma2: f64,
    /// `(n - 1) Var(U)`.
    pub target_sigma2: f64,
    pub z_sigma2: f64,
    pub mean_mu: f64,
    pub se_mu: f64,
    /// `n E[U]`.
    pub target_mu: f64,
    pub z_mu: f64,
}

/// Average `sigma_A^2` and `mu_A` over `reps` matrices with iid entries.
pub fn expected_variance_experiment(
    n: usize,
    entry: &EntryLaw,
    reps: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    if n < 3 {
        return Err(Error::domain(format!("matrix size must be >= 3, got {n}")));
    }
    if reps == 0 {
        return Err(Error::domain("reps must be >= 1"));
    }
    if let EntryLaw::Discrete(d) = entry {
        if d.min() < 0.0 || d.max() > 1.0 {
            return Err(Error::domain(format!(
                "entry law must be supported in [0, 1], got [{}, {}]",
                d.min(),
                d.max()
            )));
        }
    }

    let per_chunk: Vec<(Running, Running)> = chunks(reps)
        .par_iter()
        .map(|&(stream, count)| {
            let mut rng = stream_rng(seed, stream);
            let mut sigma = Running::default();
            let mut mu = Running::default();
            let mut entries = vec![0.0; n * n];
            for _ in 0..count {
                for x in entries.iter_mut() {
                    *x = entry.sample(&mut rng);
                }
                let a = SquareMatrix::new(n, entries.clone())?;
                let m = moments_uniform(&a)?;
                sigma.push(m.sigma2);
                mu.push(m.mu);
            }
            Ok((sigma, mu))
        })
        .collect::<Result<_>>()?;

    let (sigma, mu) = per_chunk.into_iter().fold(
        (Running::default(), Running::default()),
        |(s, m), (s2, m2)| (s.merge(s2), m.merge(m2)),
    );

    let (eu, var_u) = entry.mean_var();
    let target_sigma2 = (n as f64 - 1.0) * var_u;
    let target_mu = n as f64 * eu;
    let (se_sigma2, se_mu) = (sigma.std_error(), mu.std_error());
    Ok(ExperimentReport {
        n,
        reps,
        seed,
        mean_sigma2: sigma.mean,
        se_sigma2,
        target_sigma2,
        z_sigma2: z_score(sigma.mean, target_sigma2, se_sigma2),
        mean_mu: mu.mean,
        se_mu,
        target_mu,
        z_mu: z_score(mu.mean, target_mu, se_mu),
    })
}
