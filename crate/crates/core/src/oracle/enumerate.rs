//! Exhaustive enumeration of permutation classes.

use serde::{Deserialize, Serialize};

use super::{TailEstimate, TailMethod};
use crate::error::{Error, Result};
use crate::permstat::{CycleType, PermLaw, SquareMatrix};

/// `Y - mu >= t` is evaluated with this slack (scaled by `1 + |mu| + |t|`)
/// so that ties lost to rounding are counted.
pub const TIE_TOL: f64 = 1e-12;

/// Size limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumCaps {
    /// Largest `n` enumerated for the uniform law on `S_n`.
    pub max_uniform_n: usize,
    /// Largest `n` enumerated for fixed-point-free involutions.
    pub max_involution_n: usize,
    /// Largest cycle-type class enumerated.
    pub max_class_size: f64,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            max_uniform_n: 9,
            max_involution_n: 10,
            max_class_size: 1e6,
        }
    }
}

/// Visit every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&p);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            visit(&p);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Visit every fixed-point-free involution of `0..n` (`n` even).
pub fn for_each_fpf_involution(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(images: &mut [usize], matched: &mut [bool], visit: &mut impl FnMut(&[usize])) {
        let Some(i) = matched.iter().position(|m| !m) else {
            visit(images);
            return;
        };
        matched[i] = true;
        for j in i + 1..images.len() {
            if matched[j] {
                continue;
            }
            matched[j] = true;
            images[i] = j;
            images[j] = i;
            rec(images, matched, visit);
            matched[j] = false;
        }
        matched[i] = false;
    }
    if !n.is_multiple_of(2) {
        return;
    }
    let mut images = vec![0; n];
    let mut matched = vec![false; n];
    rec(&mut images, &mut matched, &mut visit);
}

/// Visit every permutation of cycle type `f`, each exactly once.
///
/// The cycle through the smallest unassigned point is chosen first: pick
/// its length among the remaining lengths, then an ordered sequence of the
/// other points on it.
pub fn for_each_of_cycle_type(f: &CycleType, mut visit: impl FnMut(&[usize])) {
    struct State<'a, V> {
        images: Vec<usize>,
        assigned: Vec<bool>,
        remaining: Vec<usize>,
        visit: &'a mut V,
    }

    fn next_cycle<V: FnMut(&[usize])>(s: &mut State<'_, V>) {
        let Some(start) = s.assigned.iter().position(|a| !a) else {
            (s.visit)(&s.images);
            return;
        };
        s.assigned[start] = true;
        for q in 1..s.remaining.len() {
            if s.remaining[q] == 0 {
                continue;
            }
            s.remaining[q] -= 1;
            extend(s, start, start, q - 1);
            s.remaining[q] += 1;
        }
        s.assigned[start] = false;
    }

    // `left` more points to place after `last` on the cycle through `start`
    fn extend<V: FnMut(&[usize])>(s: &mut State<'_, V>, start: usize, last: usize, left: usize) {
        if left == 0 {
            s.images[last] = start;
            next_cycle(s);
            return;
        }
        for x in 0..s.images.len() {
            if s.assigned[x] {
                continue;
            }
            s.assigned[x] = true;
            s.images[last] = x;
            extend(s, start, x, left - 1);
            s.assigned[x] = false;
        }
    }

    let n = f.n();
    let remaining: Vec<usize> = (0..=n)
        .map(|q| if q == 0 { 0 } else { f.count(q) })
        .collect();
    let mut state = State {
        images: vec![0; n],
        assigned: vec![false; n],
        remaining,
        visit: &mut visit,
    };
    next_cycle(&mut state);
}

/// The statistic over one class, with the class's weight in the law.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassValues {
    pub weight: f64,
    pub values: Vec<f64>,
}

impl ClassValues {
    fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    fn variance(&self) -> f64 {
        let m = self.mean();
        self.values.iter().map(|y| (y - m) * (y - m)).sum::<f64>() / self.values.len() as f64
    }
}

fn resource(what: String, required: f64, cap: f64) -> Error {
    Error::Resource {
        what,
        required,
        cap,
    }
}

/// `Y` for every permutation in the support of `law`, grouped by class.
pub fn class_values(a: &SquareMatrix, law: &PermLaw, caps: &EnumCaps) -> Result<Vec<ClassValues>> {
    let n = a.n();
    law.validate(n)?;
    let mut out = Vec::new();
    match law {
        PermLaw::UniformSn => {
            if n > caps.max_uniform_n {
                return Err(resource(
                    format!("enumeration of S_{n}"),
                    n as f64,
                    caps.max_uniform_n as f64,
                ));
            }
            let mut values = Vec::new();
            for_each_permutation(n, |p| values.push(a.stat_unchecked(p)));
            out.push(ClassValues {
                weight: 1.0,
                values,
            });
        }
        PermLaw::FpfInvolution => {
            if n > caps.max_involution_n {
                return Err(resource(
                    format!("enumeration of involutions of {n} points"),
                    n as f64,
                    caps.max_involution_n as f64,
                ));
            }
            let mut values = Vec::new();
            for_each_fpf_involution(n, |p| values.push(a.stat_unchecked(p)));
            out.push(ClassValues {
                weight: 1.0,
                values,
            });
        }
        _ => {
            let components = law.components(n)?.expect("cycle-type law");
            for (weight, f) in components {
                let size = f.class_size();
                if size > caps.max_class_size {
                    return Err(resource(
                        format!("enumeration of cycle type {:?}", f.counts()),
                        size,
                        caps.max_class_size,
                    ));
                }
                let mut values = Vec::with_capacity(size as usize);
                for_each_of_cycle_type(&f, |p| values.push(a.stat_unchecked(p)));
                out.push(ClassValues { weight, values });
            }
        }
    }
    Ok(out)
}

/// Closed-form centring: `n a_..` for the uniform law and `(n - 2) a_oo`
/// when every class is free of fixed points; `None` otherwise.
pub fn closed_form_mean(a: &SquareMatrix, law: &PermLaw) -> Result<Option<f64>> {
    let n = a.n() as f64;
    Ok(match law.components(a.n())? {
        None => Some(n * a.grand_mean()),
        Some(components) if components.iter().all(|(_, f)| f.fixed_points() == 0) => {
            Some((n - 2.0) * a.off_grand_mean())
        }
        Some(_) => None,
    })
}

/// The centring `mu` used for tails: [`closed_form_mean`] when available,
/// otherwise the exact mean of the enumerated classes.
pub fn law_mean(a: &SquareMatrix, law: &PermLaw, classes: &[ClassValues]) -> Result<f64> {
    match closed_form_mean(a, law)? {
        Some(mu) => Ok(mu),
        None => Ok(classes.iter().map(|c| c.weight * c.mean()).sum()),
    }
}

pub(crate) fn tail_count(values: &[f64], mu: f64, t: f64) -> usize {
    let slack = TIE_TOL * (1.0 + mu.abs() + t.abs());
    values.iter().filter(|&&y| y - mu >= t - slack).count()
}

/// Exact `P(Y - mu >= t)` for each `t`, with `mu` from [`law_mean`].
pub fn exact_tail_grid(
    a: &SquareMatrix,
    law: &PermLaw,
    grid: &[f64],
    caps: &EnumCaps,
) -> Result<Vec<TailEstimate>> {
    let classes = class_values(a, law, caps)?;
    let mu = law_mean(a, law, &classes)?;
    let trials: u64 = classes.iter().map(|c| c.values.len() as u64).sum();
    Ok(grid
        .iter()
        .map(|&t| {
            let p: f64 = classes
                .iter()
                .map(|c| c.weight * tail_count(&c.values, mu, t) as f64 / c.values.len() as f64)
                .sum();
            let p = p.clamp(0.0, 1.0);
            TailEstimate {
                point: p,
                ci_low: p,
                ci_high: p,
                trials,
                method: TailMethod::Exact,
            }
        })
        .collect())
}

/// Exact `P(Y - mu >= t)`; see [`exact_tail_grid`].
pub fn exact_tail(
    a: &SquareMatrix,
    law: &PermLaw,
    t: f64,
    caps: &EnumCaps,
) -> Result<TailEstimate> {
    Ok(exact_tail_grid(a, law, &[t], caps)?.remove(0))
}

/// Exact mean and variance of `Y` under `law`.
pub fn exact_moments(a: &SquareMatrix, law: &PermLaw, caps: &EnumCaps) -> Result<(f64, f64)> {
    let classes = class_values(a, law, caps)?;
    let mean: f64 = classes.iter().map(|c| c.weight * c.mean()).sum();
    let second: f64 = classes
        .iter()
        .map(|c| {
            let m = c.mean();
            c.weight * (c.variance() + m * m)
        })
        .sum();
    let variance = if classes.len() == 1 {
        classes[0].variance()
    } else {
        (second - mean * mean).max(0.0)
    };
    Ok((mean, variance))
}
