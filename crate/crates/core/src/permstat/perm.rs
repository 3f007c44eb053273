use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, ..., n-1}`. Serialised as a 1-based image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

impl Permutation {
    /// 0-based images; must be a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n || seen[j] {
                return Err(Error::domain(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[j] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::domain("1-based permutation contains 0"));
        }
        Permutation::new(images.iter().map(|&j| j - 1).collect())
    }

    /// Build from disjoint 1-based cycles; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || used[x - 1] {
                    return Err(Error::domain(format!(
                        "bad or repeated point {x} in cycles"
                    )));
                }
                used[x - 1] = true;
                images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Permutation::new(images)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|j| j + 1).collect()
    }

    /// Cycle lengths in order of their smallest element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut counts = vec![0; self.len()];
        for len in self.cycle_lengths() {
            counts[len - 1] += 1;
        }
        CycleType { counts }
    }
}

/// `(f_1, ..., f_n)` where `f_q` counts `q`-cycles; `sum q f_q = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl<'de> Deserialize<'de> for CycleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CycleType::new(Vec::<usize>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl CycleType {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let n = counts.len();
        if n == 0 {
            return Err(Error::domain("cycle type must have length n >= 1"));
        }
        let total: usize = counts.iter().enumerate().map(|(i, f)| (i + 1) * f).sum();
        if total != n {
            return Err(Error::domain(format!(
                "cycle type {counts:?} has sum q f_q = {total}, expected {n}"
            )));
        }
        Ok(CycleType { counts })
    }

    /// Type with the given cycle lengths.
    pub fn from_lengths(n: usize, lengths: &[usize]) -> Result<Self> {
        let mut counts = vec![0; n];
        for &q in lengths {
            if q == 0 || q > n {
                return Err(Error::domain(format!(
                    "cycle length {q} out of range for n = {n}"
                )));
            }
            counts[q - 1] += 1;
        }
        CycleType::new(counts)
    }

    /// Fixed-point-free involution type, `f_2 = n / 2`.
    pub fn involution(n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "fixed-point-free involutions need even n, got {n}"
            )));
        }
        CycleType::from_lengths(n, &vec![2; n / 2])
    }

    /// A single `n`-cycle.
    pub fn single_cycle(n: usize) -> Result<Self> {
        CycleType::from_lengths(n, &[n])
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `f_q`, for `q >= 1`.
    pub fn count(&self, q: usize) -> usize {
        self.counts.get(q.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn fixed_points(&self) -> usize {
        self.count(1)
    }

    pub fn two_cycles(&self) -> usize {
        self.count(2)
    }

    pub fn is_involution(&self) -> bool {
        let n = self.n();
        n.is_multiple_of(2) && self.two_cycles() == n / 2
    }

    /// Cycle lengths in non-decreasing order.
    pub fn lengths(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &f)| std::iter::repeat_n(i + 1, f))
            .collect()
    }

    /// Number of permutations of this type, `n! / prod_q q^{f_q} f_q!`.
    pub fn class_size(&self) -> f64 {
        let mut log = ln_factorial(self.n());
        for (i, &f) in self.counts.iter().enumerate() {
            log -= f as f64 * ((i + 1) as f64).ln() + ln_factorial(f);
        }
        log.exp().round()
    }
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// All cycle types of `S_n`, one per integer partition of `n`, ordered by
/// partitions in reverse lexicographic order (`[n]` first, `[1, ..., 1]` last).
pub fn enumerate_cycle_types(n: usize) -> Result<Vec<CycleType>> {
    if n == 0 {
        return Err(Error::domain("n must be >= 1"));
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    partitions(n, n, &mut parts, &mut |p| {
        out.push(CycleType::from_lengths(n, p).expect("partition of n"));
    });
    Ok(out)
}

fn partitions(
    remaining: usize,
    max_part: usize,
    parts: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(parts);
        return;
    }
    for q in (1..=remaining.min(max_part)).rev() {
        parts.push(q);
        partitions(remaining - q, q, parts, emit);
        parts.pop();
    }
}
