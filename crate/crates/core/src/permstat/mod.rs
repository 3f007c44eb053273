//! Hoeffding's permutation statistic `Y = sum_i a_{i, pi(i)}`.
//!
//! Moment formulas and coupling constants per permutation law, and the
//! resulting tail bounds for `Y - mu`:
//!
//! | law                                   | `sigma^2`           | `c`        |
//! |---------------------------------------|---------------------|------------|
//! | uniform on `S_n`, `n >= 3`            | `sigma_A^2`         | `8 ||a||`  |
//! | fixed-point-free involution, `n >= 5` | `sigma_iota^2`      | `24 a_o`   |
//! | uniform on type `f`, `f_1 = f_2 = 0`  | `sigma_f^2`         | `40 a_o`   |
//!
//! Laws constant on cycle type are handled as mixtures of the above.

mod law;
mod matrix;
mod perm;

pub use law::{sample_cycle_type, sample_fpf_involution, sample_uniform, PermLaw, WEIGHT_SUM_TOL};
pub use matrix::{SquareMatrix, SYMMETRY_TOL};
pub use perm::{enumerate_cycle_types, CycleType, Permutation};

use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundInput, BoundKind, BoundValue};
use crate::error::{Error, Result};

/// Relative tolerance between the two variance expressions for the
/// uniform law.
pub const VARIANCE_FORMS_TOL: f64 = 1e-9;

/// Mean and variance of `Y` under some law.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatMoments {
    pub mu: f64,
    pub sigma2: f64,
}

/// `Y = sum_i a_{i, p(i)}`.
pub fn hoeffding_stat(a: &SquareMatrix, p: &Permutation) -> Result<f64> {
    a.hoeffding_stat(p)
}

/// Mean `n a_..` and variance `sigma_A^2` under the uniform law on `S_n`.
///
/// The variance is computed both as the second-moment expression and as the
/// sum of squared double-centred entries; a disagreement beyond
/// [`VARIANCE_FORMS_TOL`] (relative to the total squared spread of the
/// entries) is reported as [`Error::Consistency`]. The centred form is
/// returned.
pub fn moments_uniform(a: &SquareMatrix) -> Result<StatMoments> {
    let n = a.n();
    let nf = n as f64;
    let g = a.grand_mean();

    let mut centered = 0.0;
    let mut squares = 0.0;
    for i in 0..n {
        for j in 0..n {
            let c = a.centered(i, j);
            centered += c * c;
            let d = a.get(i, j) - g;
            squares += d * d;
        }
    }
    // Second-moment form on entries shifted by a_.. (both forms are shift
    // invariant); the shift keeps the cancellation well conditioned.
    let rows: f64 = a.row_means().iter().map(|r| (r - g) * (r - g)).sum();
    let cols: f64 = a.col_means().iter().map(|c| (c - g) * (c - g)).sum();
    let moment_form = (squares - nf * rows - nf * cols) / (nf - 1.0);
    let centered_form = centered / (nf - 1.0);

    let scale = squares / (nf - 1.0);
    if (moment_form - centered_form).abs() > VARIANCE_FORMS_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Consistency(format!(
            "variance forms disagree: moment form {moment_form}, centred form {centered_form}"
        )));
    }
    Ok(StatMoments {
        mu: nf * g,
        sigma2: centered_form,
    })
}

/// `||a|| = max_{i,j} |a_ij - a_i.|`.
pub fn sup_norm_centered(a: &SquareMatrix) -> f64 {
    let n = a.n();
    let mut worst = 0.0f64;
    for i in 0..n {
        let r = a.row_means()[i];
        for j in 0..n {
            worst = worst.max((a.get(i, j) - r).abs());
        }
    }
    worst
}

/// `a_o = max_{i != j} |a_ij - a_io - a_jo + a_oo|`.
pub fn a_o(a: &SquareMatrix) -> f64 {
    let n = a.n();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max(a.off_centered(i, j).abs());
            }
        }
    }
    worst
}

fn off_centered_sum_squares(a: &SquareMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let c = a.off_centered(i, j);
                s += c * c;
            }
        }
    }
    s
}

fn check_symmetric(a: &SquareMatrix) -> Result<()> {
    if !a.is_symmetric() {
        return Err(Error::domain(format!(
            "matrix must be symmetric (max |a_ij - a_ji| = {} > {SYMMETRY_TOL})",
            a.max_asymmetry()
        )));
    }
    Ok(())
}

/// Mean `(n - 2) a_oo` and variance
/// `(1/(n-1) + 2 f_2 / (n(n-3))) sum_{i != j} (a_ij - a_io - a_jo + a_oo)^2`
/// of `Y` when `pi` is uniform over cycle type `f` with `f_1 = 0`.
pub fn moments_cycle_type(a: &SquareMatrix, f: &CycleType) -> Result<StatMoments> {
    let n = a.n();
    if n < 4 {
        return Err(Error::domain(format!(
            "cycle-type moments need n >= 4, got {n}"
        )));
    }
    if f.n() != n {
        return Err(Error::domain(format!(
            "cycle type is for n = {}, matrix has n = {n}",
            f.n()
        )));
    }
    if f.fixed_points() != 0 {
        return Err(Error::domain(
            "cycle-type moments need f_1 = 0 (no fixed points)",
        ));
    }
    check_symmetric(a)?;
    let nf = n as f64;
    let factor = 1.0 / (nf - 1.0) + 2.0 * f.two_cycles() as f64 / (nf * (nf - 3.0));
    Ok(StatMoments {
        mu: (nf - 2.0) * a.off_grand_mean(),
        sigma2: factor * off_centered_sum_squares(a),
    })
}

/// `sigma_iota^2 = 2(n-2)/((n-1)(n-3)) * sum_{i != j} (...)^2`, even `n >= 4`.
pub fn variance_involution(a: &SquareMatrix) -> Result<f64> {
    let n = a.n();
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "involution variance needs even n >= 4, got {n}"
        )));
    }
    check_symmetric(a)?;
    let nf = n as f64;
    Ok(2.0 * (nf - 2.0) / ((nf - 1.0) * (nf - 3.0)) * off_centered_sum_squares(a))
}

/// `sigma_f^2 = 1/(n-1) * sum_{i != j} (...)^2` for types with `f_1 = f_2 = 0`.
pub fn variance_no_two_cycles(a: &SquareMatrix) -> Result<f64> {
    let n = a.n();
    if n < 4 {
        return Err(Error::domain(format!(
            "cycle-type variance needs n >= 4, got {n}"
        )));
    }
    check_symmetric(a)?;
    Ok(off_centered_sum_squares(a) / (n as f64 - 1.0))
}

/// Mean and variance of `Y` under `law`, from the closed forms.
///
/// Laws other than `UniformSn` must put all mass on types without fixed
/// points. For mixtures the components share the mean `(n - 2) a_oo`, so
/// the variance is the weighted average of the component variances.
pub fn law_moments(a: &SquareMatrix, law: &PermLaw) -> Result<StatMoments> {
    let Some(components) = law.components(a.n())? else {
        return moments_uniform(a);
    };
    let mut mu = 0.0;
    let mut sigma2 = 0.0;
    for (w, f) in &components {
        let m = moments_cycle_type(a, f)?;
        mu = m.mu;
        sigma2 += w * m.sigma2;
    }
    Ok(StatMoments { mu, sigma2 })
}

/// `24 a_o` for the involution type, `40 a_o` for types with
/// `f_1 = f_2 = 0`; requires `n >= 5` and a symmetric matrix.
fn cycle_type_constant(a: &SquareMatrix, f: &CycleType) -> Result<f64> {
    let n = a.n();
    if n < 5 {
        return Err(Error::domain(format!(
            "coupling constants for cycle-type laws need n >= 5, got {n}"
        )));
    }
    if f.n() != n {
        return Err(Error::domain(format!(
            "cycle type is for n = {}, matrix has n = {n}",
            f.n()
        )));
    }
    check_symmetric(a)?;
    if f.fixed_points() != 0 {
        return Err(Error::domain(
            "coupling constant needs f_1 = 0 (no fixed points)",
        ));
    }
    if f.is_involution() {
        Ok(24.0 * a_o(a))
    } else if f.two_cycles() == 0 {
        Ok(40.0 * a_o(a))
    } else {
        Err(Error::Unsupported(format!(
            "no coupling constant for cycle type {:?} (2-cycles without being an involution)",
            f.counts()
        )))
    }
}

/// Bound `c` on `|(Y - mu)* - (Y - mu)|` for the law.
///
/// Mixtures are accepted only when every component has the same constant;
/// otherwise use [`tail_bound`], which bounds each component separately.
pub fn coupling_constant(a: &SquareMatrix, law: &PermLaw) -> Result<f64> {
    let Some(components) = law.components(a.n())? else {
        return Ok(8.0 * sup_norm_centered(a));
    };
    let mut constants = components.iter().map(|(_, f)| cycle_type_constant(a, f));
    let first = constants.next().expect("validated non-empty")?;
    for c in constants {
        if c? != first {
            return Err(Error::Unsupported(
                "mixture components have different coupling constants; bound them separately"
                    .into(),
            ));
        }
    }
    Ok(first)
}

/// One uniform-within-class component of a law, with everything needed to
/// evaluate a zero-bias bound for it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawComponent {
    pub weight: f64,
    pub mu: f64,
    pub sigma2: f64,
    pub c: f64,
}

fn degenerate(sigma2: f64, a: &SquareMatrix) -> bool {
    let scale = a.entries().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    sigma2 <= 1e-20 * (1.0 + scale * scale)
}

/// Per-component `(weight, mu, sigma^2, c)` for bounding `P(Y - mu >= t)`.
pub fn bound_components(a: &SquareMatrix, law: &PermLaw) -> Result<Vec<LawComponent>> {
    let out = match law.components(a.n())? {
        None => {
            let m = moments_uniform(a)?;
            vec![LawComponent {
                weight: 1.0,
                mu: m.mu,
                sigma2: m.sigma2,
                c: coupling_constant(a, law)?,
            }]
        }
        Some(components) => components
            .iter()
            .map(|(w, f)| {
                let c = cycle_type_constant(a, f)?;
                let m = moments_cycle_type(a, f)?;
                Ok(LawComponent {
                    weight: *w,
                    mu: m.mu,
                    sigma2: m.sigma2,
                    c,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    if let Some(bad) = out.iter().find(|c| degenerate(c.sigma2, a)) {
        return Err(Error::domain(format!(
            "variance of Y is zero ({}); tail bounds need sigma^2 > 0",
            bad.sigma2
        )));
    }
    Ok(out)
}

/// Bound on `P(Y - mu >= t)` for `law`, using the zero-bias bound `kind`.
///
/// For laws constant on cycle type the bound is `sum_f rho_f bound_f`.
/// Only bounds that follow from a zero-bias coupling are accepted; Bennett
/// and classical Bernstein need independent summands.
pub fn tail_bound(a: &SquareMatrix, law: &PermLaw, t: f64, kind: BoundKind) -> Result<BoundValue> {
    let components = bound_components(a, law)?;
    combine_bound(&components, t, kind)
}

/// `sum_f weight_f bound_f(t)` over precomputed components; not applicable
/// as soon as one component is.
pub fn combine_bound(components: &[LawComponent], t: f64, kind: BoundKind) -> Result<BoundValue> {
    if !kind.is_zero_bias() {
        return Err(Error::domain(format!(
            "{kind} is not implied by a zero-bias coupling; use one of eq2, eq3, eq4-tight, eq4-loose, eq7"
        )));
    }
    let mut raw = 0.0;
    for comp in components {
        let input = BoundInput::new(comp.sigma2, comp.c, t)?;
        let value = bounds::evaluate(kind, &input)?;
        match value.raw {
            Some(r) => raw += comp.weight * r,
            None => return Ok(value),
        }
    }
    Ok(BoundValue::from_raw(kind, raw))
}
