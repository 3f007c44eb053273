#![allow(dead_code)]

use rand::Rng;
use zbconc::rng::{stream_rng, StreamRng};
use zbconc::{DiscreteDist, SquareMatrix};

pub fn rng(seed: u64) -> StreamRng {
    stream_rng(seed, 0)
}

/// Mean-zero distribution with `atoms` distinct atoms in roughly [-3, 3].
pub fn random_dist(rng: &mut StreamRng, atoms: usize) -> DiscreteDist {
    let mut values: Vec<f64> = Vec::with_capacity(atoms);
    while values.len() < atoms {
        let v: f64 = rng.random_range(-3.0..3.0);
        if values.iter().all(|u| (u - v).abs() > 1e-3) {
            values.push(v);
        }
    }
    let weights: Vec<f64> = (0..atoms).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    DiscreteDist::new(values.into_iter().zip(weights.iter().map(|w| w / total)))
        .unwrap()
        .centered()
        .unwrap()
}

pub fn random_matrix(rng: &mut StreamRng, n: usize) -> SquareMatrix {
    SquareMatrix::new(n, (0..n * n).map(|_| rng.random::<f64>()).collect()).unwrap()
}

pub fn random_symmetric(rng: &mut StreamRng, n: usize) -> SquareMatrix {
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
