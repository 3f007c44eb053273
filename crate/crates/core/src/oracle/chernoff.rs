use crate::error::{Error, Result};
use crate::zerobias::{DiscreteDist, MEAN_TOL};

const GRID_POINTS: usize = 64;
const MAX_BRACKET: f64 = 1e12;

/// `inf_{s >= 0} exp(-s t) E[exp(s Y)]` for a mean-zero discrete `Y`.
///
/// `log m(s) - s t` is convex, so a log-spaced scan locates the minimiser
/// and golden-section search refines it. For `t >= max Y` the infimum is
/// the limit `s -> infinity`, which is `P(Y = t)` (or `0` above the
/// support).
pub fn chernoff_oracle(d: &DiscreteDist, t: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!("t must be finite and >= 0, got {t}")));
    }
    let mean = d.moments().mean;
    if mean.abs() > MEAN_TOL {
        return Err(Error::domain(format!(
            "Chernoff oracle expects mean zero, got {mean}"
        )));
    }
    let top = d.max();
    if t > top {
        return Ok(0.0);
    }
    if t == top {
        return Ok(d.probs()[d.len() - 1]);
    }
    if t <= mean {
        return Ok(1.0);
    }

    let objective = |s: f64| d.log_mgf(s) - s * t;
    // derivative: tilted mean minus t
    let slope = |s: f64| {
        let (mut num, mut den) = (0.0, 0.0);
        for (v, p) in d.atoms() {
            let w = p * (s * (v - top)).exp();
            num += w * v;
            den += w;
        }
        num / den - t
    };

    let mut hi = 1.0;
    while slope(hi) < 0.0 {
        if hi >= MAX_BRACKET {
            return Ok(objective(hi).exp().min(1.0));
        }
        hi *= 2.0;
    }

    let lo = hi * 1e-9;
    let ratio = (hi / lo).powf(1.0 / (GRID_POINTS - 1) as f64);
    let mut grid = Vec::with_capacity(GRID_POINTS + 1);
    grid.push(0.0);
    let mut s = lo;
    for _ in 0..GRID_POINTS {
        grid.push(s);
        s *= ratio;
    }
    let values: Vec<f64> = grid.iter().map(|&s| objective(s)).collect();
    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("non-empty grid");
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(grid.len() - 1)];

    let value = golden_section(objective, a, b).min(values[best]);
    Ok(value.exp().min(1.0))
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..300 {
        if (b - a) <= 1e-14 * (1.0 + b.abs()) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coin() -> DiscreteDist {
        DiscreteDist::new([(-1.0, 0.5), (1.0, 0.5)]).unwrap()
    }

    #[test]
    fn boundary_and_trivial_cases() {
        assert_eq!(chernoff_oracle(&coin(), 1.0).unwrap(), 0.5);
        assert_eq!(chernoff_oracle(&coin(), 0.0).unwrap(), 1.0);
        assert_eq!(chernoff_oracle(&coin(), 1.5).unwrap(), 0.0);
        assert!(chernoff_oracle(&coin(), -1.0).is_err());
        let shifted = DiscreteDist::new([(0.0, 0.5), (2.0, 0.5)]).unwrap();
        assert!(chernoff_oracle(&shifted, 1.0).is_err());
    }

    #[test]
    fn coin_closed_form() {
        // For a fair +-1 coin the optimum is the KL form:
        // inf = exp(-n D((1+t)/2 || 1/2)) with n = 1.
        for t in [0.1, 0.3, 0.5, 0.9] {
            let q: f64 = (1.0 + t) / 2.0;
            let kl = q * (2.0 * q).ln() + (1.0 - q) * (2.0 * (1.0 - q)).ln();
            let got = chernoff_oracle(&coin(), t).unwrap();
            assert!(
                (got.ln() + kl).abs() < 1e-10,
                "t={t}: {} vs {}",
                got.ln(),
                -kl
            );
        }
    }

    #[test]
    fn below_one_and_monotone() {
        let d = DiscreteDist::new([(-1.0, 2.0 / 3.0), (2.0, 1.0 / 3.0)]).unwrap();
        let mut prev = 1.0;
        for k in 1..20 {
            let t = k as f64 * 0.1;
            let v = chernoff_oracle(&d, t).unwrap();
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }
}
