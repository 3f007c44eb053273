use std::path::PathBuf;

use clap::Args;
use serde_json::json;
use zbconc::bounds::{
    self, chatterjee, chatterjee_crossover, pick_best, regime_threshold, zb_hoeffding_two_sided,
};
use zbconc::permstat::{bound_components, combine_bound, law_moments, LawComponent};
use zbconc::{BoundInput, BoundKind, BoundValue, Error, PermLaw, Result};

use super::{load_law, load_matrix};
use crate::report::{num, opt_num, to_value, Format, Output, RunConfig, Table};
use crate::{parse_kind, GridArgs, OutputArgs};

#[derive(Args, Clone, Debug)]
pub struct SourceArgs {
    /// Variance of Y.
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Coupling bound c.
    #[arg(long)]
    pub c: Option<f64>,
    /// Mean of Y, used by eq13.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Matrix (CSV or JSON); sigma2, c and mu are then computed from it.
    #[arg(long, conflicts_with_all = ["sigma2", "c", "mu"])]
    pub matrix: Option<PathBuf>,
    /// Permutation law for --matrix.
    #[arg(long, default_value = "uniform")]
    pub law: String,
}

#[derive(Args, Clone, Debug)]
pub struct BoundArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Bound kinds (comma separated or repeated).
    #[arg(long = "kind", value_delimiter = ',', value_parser = parse_kind, default_value = "eq2")]
    pub kinds: Vec<BoundKind>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Clone, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(
        long = "kind",
        value_delimiter = ',',
        value_parser = parse_kind,
        default_value = "eq2,eq3,eq4-tight,eq4-loose"
    )]
    pub kinds: Vec<BoundKind>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Where bound parameters come from.
enum Source {
    Params {
        sigma2: f64,
        c: f64,
        mu: Option<f64>,
    },
    Matrix {
        law: PermLaw,
        unit_entries: bool,
        mu: f64,
        sigma2: f64,
        components: Vec<LawComponent>,
    },
}

impl Source {
    fn resolve(args: &SourceArgs, config: &mut RunConfig) -> Result<Source> {
        match &args.matrix {
            Some(path) => {
                let a = load_matrix(path)?;
                let law = load_law(&args.law)?;
                let components = bound_components(&a, &law)?;
                let m = law_moments(&a, &law)?;
                config.inputs.push(path.display().to_string());
                config.law = Some(law.to_string());
                Ok(Source::Matrix {
                    unit_entries: a.entries_in_unit_interval(),
                    law,
                    mu: m.mu,
                    sigma2: m.sigma2,
                    components,
                })
            }
            None => {
                let (Some(sigma2), Some(c)) = (args.sigma2, args.c) else {
                    return Err(Error::Domain("need --sigma2 and --c, or --matrix".into()));
                };
                BoundInput::new(sigma2, c, 0.0)?;
                config.param("sigma2", sigma2);
                config.param("c", c);
                if let Some(mu) = args.mu {
                    config.param("mu", mu);
                }
                Ok(Source::Params {
                    sigma2,
                    c,
                    mu: args.mu,
                })
            }
        }
    }

    fn single(&self) -> Option<(f64, f64)> {
        match self {
            Source::Params { sigma2, c, .. } => Some((*sigma2, *c)),
            Source::Matrix { components, .. } if components.len() == 1 => {
                Some((components[0].sigma2, components[0].c))
            }
            Source::Matrix { .. } => None,
        }
    }

    fn mean_and_variance(&self) -> Option<(f64, f64)> {
        match self {
            Source::Params { sigma2, mu, .. } => mu.map(|m| (m, *sigma2)),
            Source::Matrix {
                law: PermLaw::UniformSn,
                mu,
                sigma2,
                ..
            } => Some((*mu, *sigma2)),
            Source::Matrix { .. } => None,
        }
    }

    fn eval(&self, kind: BoundKind, t: f64) -> Result<BoundValue> {
        match self {
            Source::Params { sigma2, c, mu } => match kind {
                BoundKind::Chatterjee => {
                    let mu = mu.ok_or_else(|| Error::Domain("eq13 needs --mu".into()))?;
                    chatterjee(mu, t)
                }
                _ => bounds::evaluate(kind, &BoundInput::new(*sigma2, *c, t)?),
            },
            Source::Matrix {
                law,
                unit_entries,
                mu,
                sigma2,
                components,
            } => match kind {
                BoundKind::Chatterjee | BoundKind::ZbHoeffdingTwoSided => {
                    if *law != PermLaw::UniformSn || !unit_entries {
                        return Err(Error::Domain(format!(
                            "{kind} needs the uniform law and matrix entries in [0, 1]"
                        )));
                    }
                    if kind == BoundKind::Chatterjee {
                        chatterjee(*mu, t)
                    } else {
                        zb_hoeffding_two_sided(*sigma2, t)
                    }
                }
                _ => combine_bound(components, t, kind),
            },
        }
    }

    fn annotate(&self, table: &mut Table, result: &mut serde_json::Map<String, serde_json::Value>) {
        if let Some((sigma2, c)) = self.single() {
            table.note("sigma2", num(sigma2));
            table.note("c", num(c));
            result.insert("sigma2".into(), json!(sigma2));
            result.insert("c".into(), json!(c));
            if let Ok(thr) = regime_threshold(sigma2, c) {
                table.note("regime_threshold", num(thr));
                result.insert("regime_threshold".into(), json!(thr));
            }
        }
        if let Some((mu, sigma2)) = self.mean_and_variance() {
            if let Ok(x) = chatterjee_crossover(mu, sigma2) {
                table.note("chatterjee_crossover", num(x));
                result.insert("chatterjee_crossover".into(), json!(x));
            }
        }
    }
}

pub fn run_bound(args: &BoundArgs) -> Result<u8> {
    let mut config = RunConfig::new("bound", &args.out, Format::Csv);
    let source = Source::resolve(&args.source, &mut config)?;
    let grid = args.grid.resolve()?;
    config.t_grid = Some(grid);
    config.kinds = args.kinds.clone();

    let mut table = Table::new(&["t", "kind", "bound", "raw", "applicable", "clamped"]);
    let mut result = serde_json::Map::new();
    source.annotate(&mut table, &mut result);

    let mut rows = Vec::new();
    for t in grid.points() {
        for &kind in &args.kinds {
            let v = source.eval(kind, t)?;
            table.row(vec![
                num(t),
                kind.to_string(),
                opt_num(v.clamped),
                opt_num(v.raw),
                v.applicable.to_string(),
                v.was_clamped().to_string(),
            ]);
            rows.push(json!({
                "t": t,
                "kind": kind,
                "bound": v.clamped,
                "raw": v.raw,
                "applicable": v.applicable,
                "clamped": v.was_clamped(),
            }));
        }
    }
    result.insert("rows".into(), json!(rows));

    Output {
        config,
        result: to_value(&result)?,
        tables: vec![table],
    }
    .emit()?;
    Ok(0)
}

pub fn run_compare(args: &CompareArgs) -> Result<u8> {
    let mut config = RunConfig::new("compare", &args.out, Format::Csv);
    let source = Source::resolve(&args.source, &mut config)?;
    let grid = args.grid.resolve()?;
    config.t_grid = Some(grid);
    config.kinds = args.kinds.clone();

    let mut header = vec!["t", "winner"];
    header.extend(args.kinds.iter().map(|k| k.as_str()));
    let mut table = Table::new(&header);
    let mut result = serde_json::Map::new();
    source.annotate(&mut table, &mut result);

    let mut rows = Vec::new();
    for t in grid.points() {
        let values = args
            .kinds
            .iter()
            .map(|&k| source.eval(k, t))
            .collect::<Result<Vec<_>>>()?;
        let winner = pick_best(&values).map(|v| v.kind);
        let mut cells = vec![num(t), winner.map(|k| k.to_string()).unwrap_or_default()];
        cells.extend(values.iter().map(|v| opt_num(v.clamped)));
        table.row(cells);
        let by_kind: serde_json::Map<String, serde_json::Value> = values
            .iter()
            .map(|v| (v.kind.to_string(), json!(v.clamped)))
            .collect();
        rows.push(json!({ "t": t, "winner": winner, "values": by_kind }));
    }
    result.insert("rows".into(), json!(rows));

    Output {
        config,
        result: to_value(&result)?,
        tables: vec![table],
    }
    .emit()?;
    Ok(0)
}
