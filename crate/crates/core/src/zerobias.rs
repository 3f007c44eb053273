//! Exact zero-bias transforms of finite discrete mean-zero laws.
//!
//! For a mean-zero `Y` with variance `sigma^2`, the zero-bias law `Y*`
//! satisfies `E[Y f(Y)] = sigma^2 E[f'(Y*)]`. When `Y` takes finitely many
//! values the solution has density `E[Y 1{Y > y}] / sigma^2`, constant
//! between consecutive atoms and zero outside `[min Y, max Y]`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Probabilities must sum to one within this absolute tolerance.
pub const PROB_SUM_TOL: f64 = 1e-12;
/// Default absolute tolerance on the mean of a zero-bias source.
pub const MEAN_TOL: f64 = 1e-10;
/// Atoms closer than this are merged by [`convolve`].
pub const MERGE_TOL: f64 = 1e-12;
/// Default cap on the product of support sizes in [`convolve`].
pub const CONVOLVE_CAP: usize = 1_000_000;

/// A finite atomic distribution with strictly increasing support.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteDist {
    values: Vec<f64>,
    probs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct DiscreteDistRepr {
    atoms: Vec<(f64, f64)>,
}

impl Serialize for DiscreteDist {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiscreteDistRepr {
            atoms: self.atoms().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscreteDist {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = DiscreteDistRepr::deserialize(d)?;
        DiscreteDist::new(repr.atoms).map_err(serde::de::Error::custom)
    }
}

/// First three moments of a [`DiscreteDist`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    /// `E[Y^3]` (raw, not central).
    pub third_moment: f64,
}

impl Moments {
    /// Mean zero within `tol` and positive variance.
    pub fn usable_for_zero_bias(&self, tol: f64) -> bool {
        self.mean.abs() <= tol && self.variance > 0.0
    }
}

impl DiscreteDist {
    /// Build from `(value, prob)` pairs in any order.
    ///
    /// Values must be finite and distinct, probabilities positive and summing
    /// to one within [`PROB_SUM_TOL`].
    pub fn new(atoms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut atoms: Vec<(f64, f64)> = atoms.into_iter().collect();
        if atoms.is_empty() {
            return Err(Error::domain("distribution needs at least one atom"));
        }
        for &(v, p) in &atoms {
            if !v.is_finite() {
                return Err(Error::domain(format!("atom value {v} is not finite")));
            }
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::domain(format!("atom probability {p} must be > 0")));
            }
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::domain("atom values must be distinct"));
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::domain(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let (values, probs) = atoms.into_iter().unzip();
        Ok(DiscreteDist { values, probs })
    }

    /// Uniform law on the given distinct values.
    pub fn uniform(values: &[f64]) -> Result<Self> {
        let p = 1.0 / values.len() as f64;
        let atoms: Vec<_> = values.iter().map(|&v| (v, p)).collect();
        // 1/k summed k times can miss 1 by more than an ulp for large k
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        DiscreteDist::new(atoms.into_iter().map(|(v, q)| (v, q / total)))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().copied().zip(self.probs.iter().copied())
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `E[Y^k]`.
    pub fn raw_moment(&self, k: u32) -> f64 {
        self.atoms().map(|(v, p)| p * v.powi(k as i32)).sum()
    }

    pub fn moments(&self) -> Moments {
        let mean = self.raw_moment(1);
        let variance = self.atoms().map(|(v, p)| p * (v - mean) * (v - mean)).sum();
        Moments {
            mean,
            variance,
            third_moment: self.raw_moment(3),
        }
    }

    /// The same law shifted to have mean zero.
    pub fn centered(&self) -> Result<Self> {
        let mean = self.raw_moment(1);
        DiscreteDist::new(self.atoms().map(|(v, p)| (v - mean, p)))
    }

    /// `m(s) = E[exp(s Y)]`.
    pub fn mgf(&self, s: f64) -> f64 {
        self.atoms().map(|(v, p)| p * (s * v).exp()).sum()
    }

    /// `m'(s) = E[Y exp(s Y)]`.
    pub fn mgf_deriv(&self, s: f64) -> f64 {
        self.atoms().map(|(v, p)| p * v * (s * v).exp()).sum()
    }

    /// `log m(s)`, computed without overflow.
    pub fn log_mgf(&self, s: f64) -> f64 {
        let shift = if s >= 0.0 {
            s * self.max()
        } else {
            s * self.min()
        };
        let inner: f64 = self.atoms().map(|(v, p)| p * (s * v - shift).exp()).sum();
        shift + inner.ln()
    }

    /// `P(Y <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.values.partition_point(|&v| v <= x);
        self.probs[..k].iter().sum::<f64>().min(1.0)
    }

    /// Law of `a Y`; `a` must be non-zero.
    pub fn scale(&self, a: f64) -> Result<Self> {
        if !a.is_finite() || a == 0.0 {
            return Err(Error::domain(format!(
                "scale factor must be finite and non-zero, got {a}"
            )));
        }
        let mut atoms: Vec<(f64, f64)> = self.atoms().map(|(v, p)| (a * v, p)).collect();
        if a < 0.0 {
            atoms.reverse();
        }
        let (values, probs) = atoms.into_iter().unzip();
        Ok(DiscreteDist { values, probs })
    }

    /// Draw one value by inverse CDF.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut u: f64 = rng.random();
        for (v, p) in self.atoms() {
            if u < p {
                return v;
            }
            u -= p;
        }
        self.max()
    }

    fn check_zero_bias_source(&self, tol: f64) -> Result<Moments> {
        let m = self.moments();
        if self.len() < 2 || m.variance <= 0.0 {
            return Err(Error::domain("zero-bias transform needs positive variance"));
        }
        if m.mean.abs() > tol {
            return Err(Error::domain(format!(
                "zero-bias transform needs mean zero (|mean| <= {tol}), got {}",
                m.mean
            )));
        }
        Ok(m)
    }
}

/// A piecewise-constant density on `[b_0, b_k]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiecewiseDensity {
    breakpoints: Vec<f64>,
    densities: Vec<f64>,
    #[serde(skip)]
    cumulative: Vec<f64>,
}

#[derive(Deserialize)]
struct PiecewiseDensityRepr {
    breakpoints: Vec<f64>,
    densities: Vec<f64>,
}

impl<'de> Deserialize<'de> for PiecewiseDensity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PiecewiseDensityRepr::deserialize(d)?;
        PiecewiseDensity::new(repr.breakpoints, repr.densities).map_err(serde::de::Error::custom)
    }
}

impl PiecewiseDensity {
    /// `densities[j]` is the density on `(breakpoints[j], breakpoints[j + 1])`.
    pub fn new(breakpoints: Vec<f64>, densities: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 || densities.len() + 1 != breakpoints.len() {
            return Err(Error::domain(
                "density needs k >= 1 segments and k + 1 breakpoints",
            ));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::domain("breakpoints must be finite"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("breakpoints must be strictly increasing"));
        }
        if densities.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::domain("densities must be finite and non-negative"));
        }
        let mut cumulative = Vec::with_capacity(breakpoints.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for (j, d) in densities.iter().enumerate() {
            acc += d * (breakpoints[j + 1] - breakpoints[j]);
            cumulative.push(acc);
        }
        if (acc - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::domain(format!("density integrates to {acc}, not 1")));
        }
        Ok(PiecewiseDensity {
            breakpoints,
            densities,
            cumulative,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    pub fn support(&self) -> (f64, f64) {
        (
            self.breakpoints[0],
            self.breakpoints[self.breakpoints.len() - 1],
        )
    }

    fn segments(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.densities)
            .map(|(w, &d)| (w[0], w[1], d))
    }

    /// `P(Y* <= x)`, piecewise linear.
    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        let j = self.breakpoints.partition_point(|&b| b <= x) - 1;
        (self.cumulative[j] + self.densities[j] * (x - self.breakpoints[j])).min(1.0)
    }

    /// Inverse CDF, solved in closed form on the segment containing `u`.
    pub fn quantile(&self, u: f64) -> f64 {
        let (lo, hi) = self.support();
        if u <= 0.0 {
            return lo;
        }
        if u >= 1.0 {
            return hi;
        }
        let k = self.densities.len();
        // first segment whose upper cumulative value exceeds u; zero-mass
        // segments are skipped automatically
        let j = (self.cumulative[1..].partition_point(|&c| c <= u)).min(k - 1);
        let d = self.densities[j];
        if d == 0.0 {
            return self.breakpoints[j + 1];
        }
        let x = self.breakpoints[j] + (u - self.cumulative[j]) / d;
        x.clamp(self.breakpoints[j], self.breakpoints[j + 1])
    }

    /// `E[(Y*)^k]`, integrated exactly segment by segment.
    pub fn raw_moment(&self, k: u32) -> f64 {
        let e = (k + 1) as i32;
        self.segments()
            .map(|(a, b, d)| d * (b.powi(e) - a.powi(e)) / e as f64)
            .sum()
    }

    /// Law of `a Y*`; `a` must be non-zero.
    pub fn scale(&self, a: f64) -> Result<Self> {
        if !a.is_finite() || a == 0.0 {
            return Err(Error::domain(format!(
                "scale factor must be finite and non-zero, got {a}"
            )));
        }
        let mut breakpoints: Vec<f64> = self.breakpoints.iter().map(|b| a * b).collect();
        let mut densities: Vec<f64> = self.densities.iter().map(|d| d / a.abs()).collect();
        if a < 0.0 {
            breakpoints.reverse();
            densities.reverse();
        }
        PiecewiseDensity::new(breakpoints, densities)
    }

    /// Max absolute difference of breakpoints and densities, or `None` when
    /// the segment counts differ.
    pub fn max_abs_diff(&self, other: &PiecewiseDensity) -> Option<f64> {
        if self.densities.len() != other.densities.len() {
            return None;
        }
        let b = self
            .breakpoints
            .iter()
            .zip(&other.breakpoints)
            .map(|(x, y)| (x - y).abs());
        let d = self
            .densities
            .iter()
            .zip(&other.densities)
            .map(|(x, y)| (x - y).abs());
        Some(b.chain(d).fold(0.0, f64::max))
    }
}

/// Exact zero-bias law of a mean-zero discrete distribution, with the
/// default mean tolerance [`MEAN_TOL`].
pub fn zero_bias_transform(dist: &DiscreteDist) -> Result<PiecewiseDensity> {
    zero_bias_transform_with_tol(dist, MEAN_TOL)
}

pub fn zero_bias_transform_with_tol(
    dist: &DiscreteDist,
    mean_tol: f64,
) -> Result<PiecewiseDensity> {
    dist.check_zero_bias_source(mean_tol)?;
    let k = dist.len();
    let (values, probs) = (dist.values(), dist.probs());

    // E[Y 1{Y > y}] on (y_j, y_{j+1}); with mean zero it also equals
    // -E[Y 1{Y <= y}]. Averaging the two sums is exact under reflection.
    let mut above = vec![0.0; k];
    let mut acc = 0.0;
    for j in (0..k).rev() {
        above[j] = acc;
        acc += probs[j] * values[j];
    }
    let mut heights = Vec::with_capacity(k - 1);
    let mut below = 0.0;
    for j in 0..k - 1 {
        below += probs[j] * values[j];
        heights.push(((above[j] - below) / 2.0).max(0.0));
    }
    // The integral of the heights equals sigma^2 when the mean is exactly
    // zero; normalising by it absorbs the residual mean.
    let norm: f64 = heights
        .iter()
        .enumerate()
        .map(|(j, h)| h * (values[j + 1] - values[j]))
        .sum();
    let densities = heights.into_iter().map(|h| h / norm).collect();
    PiecewiseDensity::new(values.to_vec(), densities)
}

/// One exact inverse-CDF draw from a piecewise-constant density.
pub fn sample_zero_bias<R: Rng + ?Sized>(density: &PiecewiseDensity, rng: &mut R) -> f64 {
    density.quantile(rng.random())
}

/// `m*(s) = E[exp(s Y*)]`, integrated segment by segment.
pub fn mgf_zero_bias(density: &PiecewiseDensity, s: f64) -> f64 {
    density
        .segments()
        .map(|(a, b, d)| {
            if s == 0.0 {
                d * (b - a)
            } else {
                d * (s * a).exp() * (s * (b - a)).exp_m1() / s
            }
        })
        .sum()
}

/// Exact law of an independent sum, with support-size cap [`CONVOLVE_CAP`].
pub fn convolve(components: &[DiscreteDist]) -> Result<DiscreteDist> {
    convolve_with_cap(components, CONVOLVE_CAP)
}

pub fn convolve_with_cap(components: &[DiscreteDist], cap: usize) -> Result<DiscreteDist> {
    let Some((first, rest)) = components.split_first() else {
        return Err(Error::domain("convolve needs at least one component"));
    };
    let product = components
        .iter()
        .fold(1.0f64, |acc, d| acc * d.len() as f64);
    if product > cap as f64 {
        return Err(Error::Resource {
            what: "convolution support".into(),
            required: product,
            cap: cap as f64,
        });
    }
    let mut acc = first.clone();
    for next in rest {
        let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(acc.len() * next.len());
        for (x, p) in acc.atoms() {
            for (y, q) in next.atoms() {
                atoms.push((x + y, p * q));
            }
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (v, p) in atoms {
            match merged.last_mut() {
                Some(last) if (v - last.0).abs() <= MERGE_TOL => {
                    let w = last.1 + p;
                    last.0 = (last.0 * last.1 + v * p) / w;
                    last.1 = w;
                }
                _ => merged.push((v, p)),
            }
        }
        let total: f64 = merged.iter().map(|a| a.1).sum();
        acc = DiscreteDist::new(merged.into_iter().map(|(v, p)| (v, p / total)))?;
    }
    Ok(acc)
}

/// A draw of `(Y, Y*)` from the replace-one-summand coupling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingSample {
    pub y: f64,
    pub ystar: f64,
    pub replaced_index: usize,
}

/// Zero-bias coupling for a sum of independent mean-zero summands.
///
/// `Y = X_1 + ... + X_n`; an index `I` is drawn with `P(I = i) =
/// sigma_i^2 / sigma^2` and `Y* = Y - X_I + X_I*` with `X_I*` drawn
/// independently from the zero-bias law of summand `I`.
#[derive(Clone, Debug)]
pub struct SumCoupling {
    components: Vec<DiscreteDist>,
    transforms: Vec<PiecewiseDensity>,
    index_cdf: Vec<f64>,
}

impl SumCoupling {
    pub fn new(components: Vec<DiscreteDist>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::domain("coupling needs at least one summand"));
        }
        let transforms = components
            .iter()
            .map(zero_bias_transform)
            .collect::<Result<Vec<_>>>()?;
        let variances: Vec<f64> = components.iter().map(|c| c.moments().variance).collect();
        let total: f64 = variances.iter().sum();
        let mut acc = 0.0;
        let index_cdf = variances
            .iter()
            .map(|v| {
                acc += v / total;
                acc
            })
            .collect();
        Ok(SumCoupling {
            components,
            transforms,
            index_cdf,
        })
    }

    pub fn components(&self) -> &[DiscreteDist] {
        &self.components
    }

    /// `P(I = i)` for each summand.
    pub fn index_probs(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.index_cdf
            .iter()
            .map(|&c| {
                let p = c - prev;
                prev = c;
                p
            })
            .collect()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> CouplingSample {
        let xs: Vec<f64> = self.components.iter().map(|c| c.sample(rng)).collect();
        let u: f64 = rng.random();
        let i = self
            .index_cdf
            .partition_point(|&c| c <= u)
            .min(self.components.len() - 1);
        let replacement = sample_zero_bias(&self.transforms[i], rng);
        let y: f64 = xs.iter().sum();
        CouplingSample {
            y,
            ystar: y - xs[i] + replacement,
            replaced_index: i,
        }
    }
}

/// One draw from the coupling; see [`SumCoupling`].
pub fn sum_coupling<R: Rng + ?Sized>(
    components: &[DiscreteDist],
    rng: &mut R,
) -> Result<CouplingSample> {
    Ok(SumCoupling::new(components.to_vec())?.sample(rng))
}
