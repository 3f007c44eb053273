use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{CycleType, Permutation};
use crate::error::{Error, Result};

/// Mixture weights must sum to one within this tolerance.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Distribution of the random permutation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum PermLaw {
    /// Uniform over `S_n`.
    UniformSn,
    /// Uniform over fixed-point-free involutions (even `n`).
    FpfInvolution,
    /// Uniform over permutations of one cycle type.
    UniformCycleType { cycle_type: CycleType },
    /// Constant on cycle type: `P(f(pi) = f) = weight`, uniform within types.
    ConstantOnCycleType { weights: Vec<(CycleType, f64)> },
}

impl fmt::Display for PermLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermLaw::UniformSn => f.write_str("uniform"),
            PermLaw::FpfInvolution => f.write_str("fpf-involution"),
            PermLaw::UniformCycleType { cycle_type } => {
                write!(f, "cycle-type:{}", join(cycle_type.counts()))
            }
            PermLaw::ConstantOnCycleType { weights } => {
                f.write_str("mixture:")?;
                for (k, (t, w)) in weights.iter().enumerate() {
                    if k > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{}={w}", join(t.counts()))?;
                }
                Ok(())
            }
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl PermLaw {
    pub fn uniform_cycle_type(cycle_type: CycleType) -> Self {
        PermLaw::UniformCycleType { cycle_type }
    }

    /// Mixture law; weights are validated.
    pub fn mixture(weights: Vec<(CycleType, f64)>) -> Result<Self> {
        let law = PermLaw::ConstantOnCycleType { weights };
        if let PermLaw::ConstantOnCycleType { weights } = &law {
            let n = weights
                .first()
                .map(|w| w.0.n())
                .ok_or_else(|| Error::domain("mixture needs at least one cycle type"))?;
            law.validate(n)?;
        }
        Ok(law)
    }

    /// Check that the law is well defined on `S_n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            PermLaw::UniformSn => Ok(()),
            PermLaw::FpfInvolution => {
                if !n.is_multiple_of(2) || n == 0 {
                    Err(Error::domain(format!(
                        "fixed-point-free involutions need even n, got {n}"
                    )))
                } else {
                    Ok(())
                }
            }
            PermLaw::UniformCycleType { cycle_type } => check_n(cycle_type, n),
            PermLaw::ConstantOnCycleType { weights } => {
                if weights.is_empty() {
                    return Err(Error::domain("mixture needs at least one cycle type"));
                }
                let mut total = 0.0;
                for (k, (t, w)) in weights.iter().enumerate() {
                    check_n(t, n)?;
                    if !(w.is_finite() && *w >= 0.0) {
                        return Err(Error::domain(format!("mixture weight {w} must be >= 0")));
                    }
                    if weights[..k].iter().any(|(u, _)| u == t) {
                        return Err(Error::domain(format!(
                            "cycle type {:?} listed twice",
                            t.counts()
                        )));
                    }
                    total += w;
                }
                if (total - 1.0).abs() > WEIGHT_SUM_TOL {
                    return Err(Error::domain(format!(
                        "mixture weights sum to {total}, not 1"
                    )));
                }
                Ok(())
            }
        }
    }

    /// The law as `(weight, cycle type)` components when it is constant on
    /// cycle type with finitely many listed types. `UniformSn` returns `None`.
    pub fn components(&self, n: usize) -> Result<Option<Vec<(f64, CycleType)>>> {
        self.validate(n)?;
        Ok(match self {
            PermLaw::UniformSn => None,
            PermLaw::FpfInvolution => Some(vec![(1.0, CycleType::involution(n)?)]),
            PermLaw::UniformCycleType { cycle_type } => Some(vec![(1.0, cycle_type.clone())]),
            PermLaw::ConstantOnCycleType { weights } => Some(
                weights
                    .iter()
                    .filter(|(_, w)| *w > 0.0)
                    .map(|(t, w)| (*w, t.clone()))
                    .collect(),
            ),
        })
    }

    /// Draw a permutation of `{0, ..., n-1}`.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Permutation> {
        self.validate(n)?;
        Ok(match self {
            PermLaw::UniformSn => sample_uniform(n, rng),
            PermLaw::FpfInvolution => sample_fpf_involution(n, rng),
            PermLaw::UniformCycleType { cycle_type } => sample_cycle_type(cycle_type, rng),
            PermLaw::ConstantOnCycleType { weights } => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let mut chosen = &weights[weights.len() - 1].0;
                for (t, w) in weights {
                    acc += w;
                    if u < acc {
                        chosen = t;
                        break;
                    }
                }
                sample_cycle_type(chosen, rng)
            }
        })
    }
}

fn check_n(t: &CycleType, n: usize) -> Result<()> {
    if t.n() != n {
        return Err(Error::domain(format!(
            "cycle type {:?} is for n = {}, expected n = {n}",
            t.counts(),
            t.n()
        )));
    }
    Ok(())
}

/// Fisher-Yates shuffle of the identity.
pub fn sample_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images_unchecked(images)
}

/// Match the smallest unmatched point to a uniformly chosen unmatched
/// partner until everything is paired. `n` must be even.
pub fn sample_fpf_involution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    debug_assert!(n.is_multiple_of(2));
    let mut images = vec![0; n];
    let mut unmatched: Vec<usize> = (0..n).collect();
    while !unmatched.is_empty() {
        let i = unmatched.remove(0);
        let k = rng.random_range(0..unmatched.len());
        let j = unmatched.remove(k);
        images[i] = j;
        images[j] = i;
    }
    Permutation::from_images_unchecked(images)
}

/// Uniform over type `f`: shuffle `0..n`, cut into consecutive blocks with
/// the cycle lengths of `f` in non-decreasing order, and close each block
/// into a cycle. Every permutation of type `f` arises from exactly
/// `prod_q q^{f_q} f_q!` arrangements.
pub fn sample_cycle_type<R: Rng + ?Sized>(f: &CycleType, rng: &mut R) -> Permutation {
    let n = f.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut images = vec![0; n];
    let mut start = 0;
    for q in f.lengths() {
        let block = &order[start..start + q];
        for k in 0..q {
            images[block[k]] = block[(k + 1) % q];
        }
        start += q;
    }
    Permutation::from_images_unchecked(images)
}
