use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::error::{Error, Result};

/// Tolerance for the `a_ij = a_ji` precondition.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A real `n x n` array with cached marginal means, `n >= 3`.
///
/// Besides the ordinary row, column and grand means it caches the
/// off-diagonal means used by laws without fixed points:
/// `a_io = sum_{j != i} a_ij / (n - 2)` and
/// `a_oo = sum_{i != j} a_ij / ((n - 1)(n - 2))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<f64>,
    row_means: Vec<f64>,
    col_means: Vec<f64>,
    grand_mean: f64,
    off_row_means: Vec<f64>,
    off_grand_mean: f64,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    entries: Vec<Vec<f64>>,
}

impl Serialize for SquareMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            n: self.n,
            entries: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SquareMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.n {
            return Err(serde::de::Error::custom(format!(
                "n = {} but {} rows given",
                repr.n,
                repr.entries.len()
            )));
        }
        SquareMatrix::from_rows(repr.entries).map_err(serde::de::Error::custom)
    }
}

impl SquareMatrix {
    /// Row-major entries.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain(format!("matrix size must be >= 3, got {n}")));
        }
        if entries.len() != n * n {
            return Err(Error::domain(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("matrix entries must be finite"));
        }
        let nf = n as f64;
        let row_sums: Vec<f64> = entries.chunks(n).map(|r| r.iter().sum()).collect();
        let col_sums: Vec<f64> = (0..n)
            .map(|j| (0..n).map(|i| entries[i * n + j]).sum())
            .collect();
        let total: f64 = row_sums.iter().sum();
        let diag: Vec<f64> = (0..n).map(|i| entries[i * n + i]).collect();
        let off_total = total - diag.iter().sum::<f64>();
        Ok(SquareMatrix {
            n,
            row_means: row_sums.iter().map(|s| s / nf).collect(),
            col_means: col_sums.iter().map(|s| s / nf).collect(),
            grand_mean: total / (nf * nf),
            off_row_means: row_sums
                .iter()
                .zip(&diag)
                .map(|(s, d)| (s - d) / (nf - 2.0))
                .collect(),
            off_grand_mean: off_total / ((nf - 1.0) * (nf - 2.0)),
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::domain(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                r.len()
            )));
        }
        SquareMatrix::new(n, rows.into_iter().flatten().collect())
    }

    /// `a_ij = f(i, j)` for 0-based indices.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        SquareMatrix::new(n, (0..n * n).map(|k| f(k / n, k % n)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// `a_i.`
    pub fn row_means(&self) -> &[f64] {
        &self.row_means
    }

    /// `a_.j`
    pub fn col_means(&self) -> &[f64] {
        &self.col_means
    }

    /// `a_..`
    pub fn grand_mean(&self) -> f64 {
        self.grand_mean
    }

    /// `a_io`
    pub fn off_row_means(&self) -> &[f64] {
        &self.off_row_means
    }

    /// `a_oo`
    pub fn off_grand_mean(&self) -> f64 {
        self.off_grand_mean
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self) -> bool {
        self.max_asymmetry() <= SYMMETRY_TOL
    }

    /// `a_ij - a_i. - a_.j + a_..`
    #[inline]
    pub fn centered(&self, i: usize, j: usize) -> f64 {
        self.get(i, j) - self.row_means[i] - self.col_means[j] + self.grand_mean
    }

    /// `a_ij - a_io - a_jo + a_oo`, the off-diagonal double centring.
    #[inline]
    pub fn off_centered(&self, i: usize, j: usize) -> f64 {
        self.get(i, j) - self.off_row_means[i] - self.off_row_means[j] + self.off_grand_mean
    }

    pub fn entries_in_unit_interval(&self) -> bool {
        self.entries.iter().all(|x| (0.0..=1.0).contains(x))
    }

    /// Hoeffding's statistic `sum_i a_{i, p(i)}`.
    pub fn hoeffding_stat(&self, p: &Permutation) -> Result<f64> {
        if p.len() != self.n {
            return Err(Error::domain(format!(
                "permutation of size {} does not match matrix size {}",
                p.len(),
                self.n
            )));
        }
        Ok(self.stat_unchecked(p.images()))
    }

    #[inline]
    pub(crate) fn stat_unchecked(&self, images: &[usize]) -> f64 {
        images
            .iter()
            .enumerate()
            .map(|(i, &j)| self.entries[i * self.n + j])
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a3() -> SquareMatrix {
        SquareMatrix::from_rows(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 2.0, 0.0],
            vec![2.0, 0.0, 1.0],
        ])
        .unwrap()
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SquareMatrix::new(2, vec![0.0; 4]).is_err());
        assert!(SquareMatrix::new(3, vec![0.0; 8]).is_err());
        assert!(SquareMatrix::from_rows(vec![vec![0.0; 3], vec![0.0; 3], vec![0.0; 2]]).is_err());
        assert!(SquareMatrix::new(3, vec![f64::NAN; 9]).is_err());
    }

    #[test]
    fn cached_means_match_recomputation() {
        let m =
            SquareMatrix::from_fn(5, |i, j| ((i * 7 + j * 3) % 11) as f64 * 0.37 - 1.0).unwrap();
        let n = 5;
        for i in 0..n {
            let row: f64 = (0..n).map(|j| m.get(i, j)).sum::<f64>() / n as f64;
            let col: f64 = (0..n).map(|j| m.get(j, i)).sum::<f64>() / n as f64;
            let off: f64 =
                (0..n).filter(|&j| j != i).map(|j| m.get(i, j)).sum::<f64>() / (n - 2) as f64;
            assert!((row - m.row_means()[i]).abs() < 1e-12);
            assert!((col - m.col_means()[i]).abs() < 1e-12);
            assert!((off - m.off_row_means()[i]).abs() < 1e-12);
        }
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += m.get(i, j);
                }
            }
        }
        assert!((off / 12.0 - m.off_grand_mean()).abs() < 1e-12);
    }

    #[test]
    fn symmetry_flag() {
        assert!(a3().is_symmetric());
        let m = SquareMatrix::from_fn(3, |i, j| (i * 3 + j) as f64).unwrap();
        assert!(!m.is_symmetric());
        let m = SquareMatrix::from_fn(3, |i, j| if i < j { 1.0 + 1e-13 } else { 1.0 }).unwrap();
        assert!(m.is_symmetric());
    }

    #[test]
    fn hoeffding_stat_examples() {
        let a = a3();
        assert_eq!(a.hoeffding_stat(&Permutation::identity(3)).unwrap(), 3.0);
        let rev = Permutation::from_one_based(&[3, 2, 1]).unwrap();
        assert_eq!(a.hoeffding_stat(&rev).unwrap(), 6.0);
        let k = SquareMatrix::from_fn(4, |_, _| 2.5).unwrap();
        assert_eq!(k.hoeffding_stat(&Permutation::identity(4)).unwrap(), 10.0);
        assert!(a.hoeffding_stat(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&a3()).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"entries":[[0.0,1.0,2.0],[1.0,2.0,0.0],[2.0,0.0,1.0]]}"#
        );
        let back: SquareMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a3());
        assert!(serde_json::from_str::<SquareMatrix>(
            r#"{"n":4,"entries":[[1,2,3],[1,2,3],[1,2,3]]}"#
        )
        .is_err());
    }
}
