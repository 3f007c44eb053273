pub mod bound;
pub mod moments;
pub mod sample;
pub mod validate;
pub mod zerobias;

use std::path::{Path, PathBuf};

use zbconc::formats::{parse_law, read_matrix};
use zbconc::{PermLaw, Result, SquareMatrix};

pub fn load_matrix(path: &Path) -> Result<SquareMatrix> {
    read_matrix(path)
}

pub fn load_matrices(paths: &[PathBuf]) -> Result<Vec<(String, SquareMatrix)>> {
    if paths.is_empty() {
        return Err(zbconc::Error::Domain(
            "at least one --matrix is required".into(),
        ));
    }
    paths
        .iter()
        .map(|p| Ok((p.display().to_string(), load_matrix(p)?)))
        .collect()
}

pub fn load_law(input: &str) -> Result<PermLaw> {
    parse_law(input)
}

/// Explicit seed, or a fresh one that is echoed in the output.
pub fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}
