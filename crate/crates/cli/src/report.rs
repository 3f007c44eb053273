//! Run configuration echo and JSON/CSV rendering.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};
use zbconc::bounds::TGrid;
use zbconc::{BoundKind, Error, Result};

use crate::OutputArgs;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything that determines a run's output. Thread count is left out
/// because it never changes results.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<TGrid>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub kinds: Vec<BoundKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Subcommand-specific settings.
    pub params: Map<String, Value>,
}

impl RunConfig {
    pub fn new(subcommand: &'static str, out: &OutputArgs, default_format: Format) -> Self {
        RunConfig {
            subcommand,
            inputs: Vec::new(),
            law: None,
            t_grid: None,
            kinds: Vec::new(),
            seed: None,
            trials: None,
            format: out.format.unwrap_or(default_format),
            output: out.output.as_ref().map(|p| p.display().to_string()),
            params: Map::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.params.insert(key.to_string(), json!(value));
    }
}

/// One CSV block: `# key: value` notes, a header and rows.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub notes: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            ..Table::default()
        }
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

pub fn num(x: f64) -> String {
    x.to_string()
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub struct Output {
    pub config: RunConfig,
    pub result: Value,
    pub tables: Vec<Table>,
}

impl Output {
    pub fn render(&self) -> Result<String> {
        let config = serde_json::to_value(&self.config).map_err(|e| Error::Parse(e.to_string()))?;
        match self.config.format {
            Format::Json => {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "config": config,
                    "result": self.result,
                });
                let mut text =
                    serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))?;
                text.push('\n');
                Ok(text)
            }
            Format::Csv => {
                let mut text = String::new();
                let _ = writeln!(text, "# schema_version: {SCHEMA_VERSION}");
                let _ = writeln!(text, "# config: {config}");
                for table in &self.tables {
                    for (k, v) in &table.notes {
                        let _ = writeln!(text, "# {k}: {v}");
                    }
                    let _ = writeln!(text, "{}", table.header.join(","));
                    for row in &table.rows {
                        let _ = writeln!(text, "{}", row.join(","));
                    }
                }
                Ok(text)
            }
        }
    }

    /// Render fully, then write in one go so failures leave no partial output.
    pub fn emit(&self) -> Result<()> {
        let text = self.render()?;
        match &self.config.output {
            Some(path) => fs::write(PathBuf::from(path), text)
                .map_err(|e| Error::Domain(format!("cannot write {path}: {e}"))),
            None => std::io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .map_err(|e| Error::Domain(format!("cannot write to stdout: {e}"))),
        }
    }
}

pub fn to_value(v: &impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))
}
