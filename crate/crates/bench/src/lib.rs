//! Fixtures shared by the benchmarks.

use rand::Rng;
use zbconc::rng::stream_rng;
use zbconc::{DiscreteDist, SquareMatrix};

/// Matrix with iid uniform [0, 1] entries drawn from a fixed stream.
pub fn uniform_matrix(n: usize, seed: u64) -> SquareMatrix {
    let mut rng = stream_rng(seed, 0);
    SquareMatrix::new(n, (0..n * n).map(|_| rng.random::<f64>()).collect()).unwrap()
}

/// Symmetric matrix with iid uniform [0, 1] entries on and above the diagonal.
pub fn symmetric_matrix(n: usize, seed: u64) -> SquareMatrix {
    let mut rng = stream_rng(seed, 0);
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let x: f64 = rng.random();
            m[i * n + j] = x;
            m[j * n + i] = x;
        }
    }
    SquareMatrix::new(n, m).unwrap()
}

/// Mean-zero distribution on `atoms` evenly spaced points with uneven weights.
pub fn spread_dist(atoms: usize) -> DiscreteDist {
    let total: f64 = (1..=atoms).map(|k| k as f64).sum();
    DiscreteDist::new((1..=atoms).map(|k| (k as f64, k as f64 / total)))
        .unwrap()
        .centered()
        .unwrap()
}
