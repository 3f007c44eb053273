//! Closed-form tail bounds and the regime analysis comparing them.
//!
//! Every evaluator computes the exponent first and exponentiates last, so
//! very small bounds underflow to `0.0` instead of overflowing
//! intermediate terms. Raw formula values are kept alongside the value
//! clamped to `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Zero-bias constant in the Bernstein-type bound for independent sums.
pub const BERNSTEIN_ZERO_BIAS_A: f64 = 4.0;
/// Classical Bernstein constant.
pub const BERNSTEIN_CLASSICAL_A: f64 = 2.0 / 3.0;

/// Identifies one closed-form bound.
///
/// The declaration order is the tie-break order used by [`best_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    /// `exp(-t^2 / (2(sigma^2 + c t)))`, needs `Y* - Y <= c`.
    #[serde(rename = "eq2")]
    ZbOneSided,
    /// `exp(-t^2 / (10 sigma^2 / 3 + c t))`, needs `|Y* - Y| <= c`.
    #[serde(rename = "eq3")]
    ZbTwoSided,
    /// `exp(-(t/c)(log t - log log t - sigma^2/c))` for `t > e`.
    #[serde(rename = "eq4-tight")]
    TlogtTight,
    /// `exp(-(t/2c)(log t - 2 sigma^2/c))` for `t > e`.
    #[serde(rename = "eq4-loose")]
    TlogtLoose,
    /// `exp(-t^2 / (2 sigma^2 + 4 c t))`, the zero-bias Bernstein form.
    #[serde(rename = "eq7")]
    Bernstein,
    /// `exp(-t^2 / (2 sigma^2 + (2/3) c t))`, independent summands only.
    #[serde(rename = "bernstein")]
    BernsteinClassical,
    /// Bennett's inequality, independent summands only.
    #[serde(rename = "eq8")]
    Bennett,
    /// `2 exp(-t^2 / (4 mu + 2t))`, mean-based bound for entries in `[0, 1]`.
    #[serde(rename = "eq13")]
    Chatterjee,
    /// `2 exp(-t^2 / (2 sigma_A^2 + 16 t))`.
    #[serde(rename = "eq14")]
    ZbHoeffdingTwoSided,
}

impl BoundKind {
    pub const ALL: [BoundKind; 9] = [
        BoundKind::ZbOneSided,
        BoundKind::ZbTwoSided,
        BoundKind::TlogtTight,
        BoundKind::TlogtLoose,
        BoundKind::Bernstein,
        BoundKind::BernsteinClassical,
        BoundKind::Bennett,
        BoundKind::Chatterjee,
        BoundKind::ZbHoeffdingTwoSided,
    ];

    /// Bounds that follow from a zero-bias coupling alone, without
    /// independence of summands.
    pub const ZERO_BIAS: [BoundKind; 5] = [
        BoundKind::ZbOneSided,
        BoundKind::ZbTwoSided,
        BoundKind::TlogtTight,
        BoundKind::TlogtLoose,
        BoundKind::Bernstein,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::ZbOneSided => "eq2",
            BoundKind::ZbTwoSided => "eq3",
            BoundKind::TlogtTight => "eq4-tight",
            BoundKind::TlogtLoose => "eq4-loose",
            BoundKind::Bernstein => "eq7",
            BoundKind::BernsteinClassical => "bernstein",
            BoundKind::Bennett => "eq8",
            BoundKind::Chatterjee => "eq13",
            BoundKind::ZbHoeffdingTwoSided => "eq14",
        }
    }

    /// True when the bound is valid under a zero-bias coupling without
    /// assuming independent summands.
    pub fn is_zero_bias(self) -> bool {
        Self::ZERO_BIAS.contains(&self)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.trim().to_ascii_lowercase().as_str() {
            "eq2" | "one-sided" => BoundKind::ZbOneSided,
            "eq3" | "two-sided" => BoundKind::ZbTwoSided,
            "eq4" | "eq4-tight" | "tlogt-tight" => BoundKind::TlogtTight,
            "eq4-loose" | "tlogt-loose" => BoundKind::TlogtLoose,
            "eq7" => BoundKind::Bernstein,
            "bernstein" | "bernstein-classical" => BoundKind::BernsteinClassical,
            "eq8" | "bennett" => BoundKind::Bennett,
            "eq13" | "chatterjee" => BoundKind::Chatterjee,
            "eq14" => BoundKind::ZbHoeffdingTwoSided,
            other => return Err(Error::Parse(format!("unknown bound kind `{other}`"))),
        };
        Ok(kind)
    }
}

/// Variance, coupling bound and deviation threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundInput {
    pub sigma2: f64,
    pub c: f64,
    pub t: f64,
}

impl BoundInput {
    pub fn new(sigma2: f64, c: f64, t: f64) -> Result<Self> {
        if !sigma2.is_finite() || sigma2 <= 0.0 {
            return Err(Error::domain(format!(
                "sigma2 must be finite and > 0, got {sigma2}"
            )));
        }
        if !c.is_finite() || c < 0.0 {
            return Err(Error::domain(format!("c must be finite and >= 0, got {c}")));
        }
        check_t(t)?;
        Ok(BoundInput { sigma2, c, t })
    }

    pub fn with_t(self, t: f64) -> Result<Self> {
        BoundInput::new(self.sigma2, self.c, t)
    }
}

fn check_t(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!("t must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// An evaluated bound.
///
/// `raw` is the formula value, which may exceed one; `clamped` is
/// `min(raw, 1)`. Both are `None` when a precondition such as `t > e`
/// fails, in which case `applicable` is false.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub kind: BoundKind,
    pub raw: Option<f64>,
    pub clamped: Option<f64>,
    pub applicable: bool,
}

impl BoundValue {
    fn from_exponent(kind: BoundKind, log_raw: f64) -> Self {
        let raw = log_raw.exp();
        BoundValue {
            kind,
            raw: Some(raw),
            clamped: Some(raw.min(1.0)),
            applicable: true,
        }
    }

    pub(crate) fn from_raw(kind: BoundKind, raw: f64) -> Self {
        BoundValue {
            kind,
            raw: Some(raw),
            clamped: Some(raw.min(1.0)),
            applicable: true,
        }
    }

    fn not_applicable(kind: BoundKind) -> Self {
        BoundValue {
            kind,
            raw: None,
            clamped: None,
            applicable: false,
        }
    }

    /// True when the raw formula exceeded one and was clamped.
    pub fn was_clamped(&self) -> bool {
        matches!(self.raw, Some(r) if r > 1.0)
    }

    /// Scale both values by a positive factor, keeping `clamped = min(raw, 1)`.
    pub fn scaled(self, factor: f64) -> Self {
        match self.raw {
            Some(r) => {
                let raw = r * factor;
                BoundValue {
                    raw: Some(raw),
                    clamped: Some(raw.min(1.0)),
                    ..self
                }
            }
            None => self,
        }
    }
}

/// Right-tail bound under `Y* - Y <= c`.
pub fn zb_one_sided(input: &BoundInput) -> BoundValue {
    let BoundInput { sigma2, c, t } = *input;
    BoundValue::from_exponent(BoundKind::ZbOneSided, -(t * t) / (2.0 * (sigma2 + c * t)))
}

/// Right-tail bound under `|Y* - Y| <= c`.
pub fn zb_two_sided(input: &BoundInput) -> BoundValue {
    let BoundInput { sigma2, c, t } = *input;
    BoundValue::from_exponent(
        BoundKind::ZbTwoSided,
        -(t * t) / (10.0 * sigma2 / 3.0 + c * t),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TlogtForm {
    Tight,
    Loose,
}

/// The `t log t` bound, valid for `t > e`.
pub fn zb_tlogt(input: &BoundInput, form: TlogtForm) -> Result<BoundValue> {
    let BoundInput { sigma2, c, t } = *input;
    let kind = match form {
        TlogtForm::Tight => BoundKind::TlogtTight,
        TlogtForm::Loose => BoundKind::TlogtLoose,
    };
    if c <= 0.0 {
        return Err(Error::domain(format!("{kind} requires c > 0")));
    }
    if t <= std::f64::consts::E {
        return Ok(BoundValue::not_applicable(kind));
    }
    let log_t = t.ln();
    let exponent = match form {
        TlogtForm::Tight => -(t / c) * (log_t - log_t.ln() - sigma2 / c),
        TlogtForm::Loose => -(t / (2.0 * c)) * (log_t - 2.0 * sigma2 / c),
    };
    Ok(BoundValue::from_exponent(kind, exponent))
}

/// `exp(-t^2 / (2 sigma^2 + a c t))`.
///
/// `a = 4` is the zero-bias value, `a = 2/3` the classical Bernstein one.
/// The returned kind follows the constant: exactly `2/3` reports
/// [`BoundKind::BernsteinClassical`], anything else [`BoundKind::Bernstein`].
pub fn bernstein_family(input: &BoundInput, a: f64) -> Result<BoundValue> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::domain(format!(
            "Bernstein constant a must be > 0, got {a}"
        )));
    }
    let BoundInput { sigma2, c, t } = *input;
    let kind = if a == BERNSTEIN_CLASSICAL_A {
        BoundKind::BernsteinClassical
    } else {
        BoundKind::Bernstein
    };
    Ok(BoundValue::from_exponent(
        kind,
        -(t * t) / (2.0 * sigma2 + a * c * t),
    ))
}

/// Bennett's inequality for independent summands bounded by `c`.
pub fn bennett(input: &BoundInput) -> Result<BoundValue> {
    let BoundInput { sigma2, c, t } = *input;
    if c <= 0.0 {
        return Err(Error::domain("Bennett's bound requires c > 0"));
    }
    let u = c * t / sigma2;
    let exponent = t / c - (sigma2 / (c * c)) * (1.0 + u) * u.ln_1p();
    Ok(BoundValue::from_exponent(BoundKind::Bennett, exponent))
}

/// `2 exp(-t^2 / (4 mu + 2 t))` for `P(|Y - mu| >= t)`.
pub fn chatterjee(mu: f64, t: f64) -> Result<BoundValue> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::domain(format!("mean must be > 0, got {mu}")));
    }
    check_t(t)?;
    let exponent = std::f64::consts::LN_2 - (t * t) / (4.0 * mu + 2.0 * t);
    Ok(BoundValue::from_exponent(BoundKind::Chatterjee, exponent))
}

/// `2 exp(-t^2 / (2 sigma_A^2 + 16 t))` for `P(|Y - mu_A| >= t)`.
pub fn zb_hoeffding_two_sided(sigma_a2: f64, t: f64) -> Result<BoundValue> {
    if !sigma_a2.is_finite() || sigma_a2 <= 0.0 {
        return Err(Error::domain(format!(
            "sigma_A^2 must be > 0, got {sigma_a2}"
        )));
    }
    check_t(t)?;
    let exponent = std::f64::consts::LN_2 - (t * t) / (2.0 * sigma_a2 + 16.0 * t);
    Ok(BoundValue::from_exponent(
        BoundKind::ZbHoeffdingTwoSided,
        exponent,
    ))
}

/// `4 sigma^2 / (3c)`: below it the one-sided bound is smaller than the
/// two-sided one, above it the reverse.
pub fn regime_threshold(sigma2: f64, c: f64) -> Result<f64> {
    if !sigma2.is_finite() || sigma2 <= 0.0 {
        return Err(Error::domain(format!("sigma2 must be > 0, got {sigma2}")));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::domain("regime threshold requires c > 0"));
    }
    Ok(4.0 * sigma2 / (3.0 * c))
}

/// `(2 mu_A - sigma_A^2) / 7`: below it the zero-bias two-sided Hoeffding
/// bound beats the mean-based one. A negative value means it never does
/// for `t >= 0`.
pub fn chatterjee_crossover(mu_a: f64, sigma_a2: f64) -> Result<f64> {
    if !sigma_a2.is_finite() || sigma_a2 <= 0.0 {
        return Err(Error::domain(format!(
            "sigma_A^2 must be > 0, got {sigma_a2}"
        )));
    }
    if !mu_a.is_finite() {
        return Err(Error::domain("mu_A must be finite"));
    }
    Ok((2.0 * mu_a - sigma_a2) / 7.0)
}

/// Evaluate any bound that is a function of `(sigma^2, c, t)` alone.
///
/// [`BoundKind::ZbHoeffdingTwoSided`] ignores `c` (it is `8` by
/// construction); [`BoundKind::Chatterjee`] needs a mean and is rejected.
pub fn evaluate(kind: BoundKind, input: &BoundInput) -> Result<BoundValue> {
    match kind {
        BoundKind::ZbOneSided => Ok(zb_one_sided(input)),
        BoundKind::ZbTwoSided => Ok(zb_two_sided(input)),
        BoundKind::TlogtTight => zb_tlogt(input, TlogtForm::Tight),
        BoundKind::TlogtLoose => zb_tlogt(input, TlogtForm::Loose),
        BoundKind::Bernstein => bernstein_family(input, BERNSTEIN_ZERO_BIAS_A),
        BoundKind::BernsteinClassical => bernstein_family(input, BERNSTEIN_CLASSICAL_A),
        BoundKind::Bennett => bennett(input),
        BoundKind::ZbHoeffdingTwoSided => zb_hoeffding_two_sided(input.sigma2, input.t),
        BoundKind::Chatterjee => Err(Error::domain("eq13 needs the mean mu_A, not (sigma2, c)")),
    }
}

/// The applicable bound with the smallest clamped value.
///
/// Kinds whose preconditions fail (including domain errors such as `c = 0`
/// for Bennett) are skipped. Ties go to the kind that comes first in
/// [`BoundKind`] order. `Ok(None)` means nothing was applicable.
pub fn best_bound(input: &BoundInput, available: &[BoundKind]) -> Result<Option<BoundValue>> {
    if available.is_empty() {
        return Err(Error::domain("best_bound needs at least one bound kind"));
    }
    let mut kinds = available.to_vec();
    kinds.sort();
    kinds.dedup();
    let values: Vec<BoundValue> = kinds
        .into_iter()
        .filter_map(|k| evaluate(k, input).ok())
        .collect();
    Ok(pick_best(&values))
}

/// The applicable value with the smallest clamped bound, ties going to the
/// earlier kind in [`BoundKind`] order.
pub fn pick_best(values: &[BoundValue]) -> Option<BoundValue> {
    values
        .iter()
        .filter(|v| v.clamped.is_some())
        .min_by(|a, b| {
            a.clamped
                .partial_cmp(&b.clamped)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.kind.cmp(&b.kind))
        })
        .copied()
}

/// Spacing of a [`TGrid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// An inclusive grid of `count` deviation thresholds from `min` to `max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl TGrid {
    pub fn new(min: f64, max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if count == 0 {
            return Err(Error::domain("t-grid count must be >= 1"));
        }
        check_t(min)?;
        check_t(max)?;
        if max < min {
            return Err(Error::domain(format!("t-grid max {max} < min {min}")));
        }
        if spacing == Spacing::Log && min <= 0.0 {
            return Err(Error::domain("log-spaced t-grid needs min > 0"));
        }
        Ok(TGrid {
            min,
            max,
            count,
            spacing,
        })
    }

    /// Single point grid.
    pub fn single(t: f64) -> Result<Self> {
        TGrid::new(t, t, 1, Spacing::Linear)
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    return self.max;
                }
                let frac = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * frac,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * frac).exp(),
                }
            })
            .collect()
    }
}

impl FromStr for TGrid {
    type Err = Error;

    /// Parses `min:max:count`; spacing is linear.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "t-grid must be min:max:count, got `{s}`"
            )));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad t-grid value `{p}`: {e}")))
        };
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad t-grid count `{}`: {e}", parts[2])))?;
        TGrid::new(num(parts[0])?, num(parts[1])?, count, Spacing::Linear)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub t: f64,
    pub value: BoundValue,
}

/// Bound values for a set of kinds over a t-grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub sigma2: f64,
    pub c: f64,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    /// Rows are ordered by t, then by kind in the order given.
    pub fn evaluate(sigma2: f64, c: f64, grid: &[f64], kinds: &[BoundKind]) -> Result<Self> {
        let base = BoundInput::new(sigma2, c, 0.0)?;
        let mut rows = Vec::with_capacity(grid.len() * kinds.len());
        for &t in grid {
            let input = base.with_t(t)?;
            for &kind in kinds {
                rows.push(BoundRow {
                    t,
                    value: evaluate(kind, &input)?,
                });
            }
        }
        Ok(BoundReport { sigma2, c, rows })
    }
}
