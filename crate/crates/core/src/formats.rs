//! Text formats for matrices, distributions, laws, cycle types and
//! permutations.
//!
//! * Matrix: CSV with `n` rows of `n` comma-separated reals (blank lines and
//!   lines starting with `#` are skipped), or JSON `{"n": .., "entries": [[..]]}`.
//! * Distribution: JSON `{"atoms": [[value, prob], ..]}`.
//! * Law: `uniform`, `fpf-involution`, `cycle-type:f1,f2,..`,
//!   `mixture:f1,f2,..=w;g1,g2,..=w`, or the JSON form of [`PermLaw`].
//! * Cycle type: JSON integer vector `[f1, .., fn]`.
//! * Permutation: JSON 1-based image vector.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::permstat::{CycleType, PermLaw, Permutation, SquareMatrix};
use crate::zerobias::DiscreteDist;

fn parse_err(what: &str, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

fn looks_like_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{' | '['))
}

pub fn parse_matrix_csv(text: &str) -> Result<SquareMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_err("matrix CSV", e))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .map(|field| {
                field
                    .parse::<f64>()
                    .map_err(|e| parse_err(&format!("matrix CSV row {} value `{field}`", k + 1), e))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    SquareMatrix::from_rows(rows)
}

/// `{"n": .., "entries": [[..], ..]}` or a bare array of rows.
pub fn parse_matrix_json(text: &str) -> Result<SquareMatrix> {
    if text.trim_start().starts_with('[') {
        let rows: Vec<Vec<f64>> =
            serde_json::from_str(text).map_err(|e| parse_err("matrix JSON", e))?;
        return SquareMatrix::from_rows(rows);
    }
    serde_json::from_str(text).map_err(|e| parse_err("matrix JSON", e))
}

/// JSON when the text starts with `{`, CSV otherwise.
pub fn parse_matrix(text: &str) -> Result<SquareMatrix> {
    if looks_like_json(text) {
        parse_matrix_json(text)
    } else {
        parse_matrix_csv(text)
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<SquareMatrix> {
    let path = path.as_ref();
    parse_matrix(&read_text(path)?).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Inline text, or the contents of a file when `input` starts with `@`.
pub fn inline_or_file(input: &str) -> Result<String> {
    match input.strip_prefix('@') {
        Some(path) => read_text(Path::new(path)),
        None => Ok(input.to_string()),
    }
}

pub fn parse_dist(input: &str) -> Result<DiscreteDist> {
    let text = inline_or_file(input)?;
    serde_json::from_str(&text).map_err(|e| parse_err("distribution JSON", e))
}

fn parse_counts(text: &str) -> Result<CycleType> {
    let text = text.trim();
    if text.starts_with('[') {
        return parse_cycle_type(text);
    }
    let counts = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<usize>()
                .map_err(|e| parse_err(&format!("cycle-type count `{c}`"), e))
        })
        .collect::<Result<Vec<_>>>()?;
    CycleType::new(counts)
}

pub fn parse_cycle_type(text: &str) -> Result<CycleType> {
    serde_json::from_str(text.trim()).map_err(|e| parse_err("cycle type JSON", e))
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    serde_json::from_str(text.trim()).map_err(|e| parse_err("permutation JSON", e))
}

pub fn parse_law(input: &str) -> Result<PermLaw> {
    let text = inline_or_file(input)?;
    let text = text.trim();
    if looks_like_json(text) {
        return serde_json::from_str(text).map_err(|e| parse_err("law JSON", e));
    }
    match text {
        "uniform" | "uniform-sn" => return Ok(PermLaw::UniformSn),
        "fpf-involution" | "involution" => return Ok(PermLaw::FpfInvolution),
        _ => {}
    }
    if let Some(counts) = text.strip_prefix("cycle-type:") {
        return Ok(PermLaw::uniform_cycle_type(parse_counts(counts)?));
    }
    if let Some(parts) = text.strip_prefix("mixture:") {
        let weights = parts
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|part| {
                let (counts, w) = part.split_once('=').ok_or_else(|| {
                    Error::Parse(format!("mixture component `{part}` must be counts=weight"))
                })?;
                let w = w
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| parse_err(&format!("mixture weight `{w}`"), e))?;
                Ok((parse_counts(counts)?, w))
            })
            .collect::<Result<Vec<_>>>()?;
        return PermLaw::mixture(weights);
    }
    Err(Error::Parse(format!(
        "unknown law `{text}`; expected uniform, fpf-involution, cycle-type:.., mixture:.. or JSON"
    )))
}
