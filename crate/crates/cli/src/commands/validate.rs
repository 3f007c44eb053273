use std::path::PathBuf;

use clap::Args;
use serde_json::json;
use zbconc::oracle::{validate_domination, DominationOptions, EnumCaps, McConfig, TailSource};
use zbconc::{BoundKind, Error, Result};

use super::{load_law, load_matrices};
use crate::report::{num, opt_num, to_value, Format, Output, RunConfig, Table};
use crate::{parse_kind, GridArgs, OutputArgs, TailsMode};

#[derive(Args, Clone, Debug)]
pub struct ValidateArgs {
    /// Matrix file (CSV or JSON); repeatable.
    #[arg(long = "matrix", required = true)]
    pub matrices: Vec<PathBuf>,
    #[arg(long, default_value = "uniform")]
    pub law: String,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(
        long = "kind",
        value_delimiter = ',',
        value_parser = parse_kind,
        default_value = "eq2,eq3,eq4-tight,eq4-loose,eq7"
    )]
    pub kinds: Vec<BoundKind>,
    /// Required: all Monte Carlo draws derive from it.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Where tail probabilities come from.
    #[arg(long = "mc", value_enum, default_value = "auto")]
    pub tails: TailsMode,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Confidence level of Monte Carlo intervals.
    #[arg(long, default_value_t = 0.999)]
    pub level: f64,
    /// Multiply every bound by this factor before comparing (negative control).
    #[arg(long = "bound-scale", default_value_t = 1.0)]
    pub bound_scale: f64,
    /// Worker threads for Monte Carlo; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long = "max-uniform-n", default_value_t = 9)]
    pub max_uniform_n: usize,
    #[arg(long = "max-involution-n", default_value_t = 10)]
    pub max_involution_n: usize,
    #[arg(long = "max-class-size", default_value_t = 1e6)]
    pub max_class_size: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: &ValidateArgs) -> Result<u8> {
    let Some(seed) = args.seed else {
        return Err(Error::Domain("validate requires an explicit --seed".into()));
    };
    let mut config = RunConfig::new("validate", &args.out, Format::Csv);
    let law = load_law(&args.law)?;
    let matrices = load_matrices(&args.matrices)?;
    let grid = args.grid.resolve()?;
    config.inputs = matrices.iter().map(|(p, _)| p.clone()).collect();
    config.law = Some(law.to_string());
    config.t_grid = Some(grid);
    config.kinds = args.kinds.clone();
    config.seed = Some(seed);
    config.trials = Some(args.trials);
    config.param("tails", format!("{:?}", args.tails).to_lowercase());
    config.param("level", args.level);
    config.param("bound_scale", args.bound_scale);
    config.param(
        "caps",
        json!({
            "max_uniform_n": args.max_uniform_n,
            "max_involution_n": args.max_involution_n,
            "max_class_size": args.max_class_size,
        }),
    );

    let caps = EnumCaps {
        max_uniform_n: args.max_uniform_n,
        max_involution_n: args.max_involution_n,
        max_class_size: args.max_class_size,
    };
    let mut mc = McConfig::new(args.trials, seed);
    mc.level = args.level;
    mc.threads = args.threads;
    let source = match args.tails {
        TailsMode::Auto => TailSource::Auto { caps, mc },
        TailsMode::Exact => TailSource::Exact(caps),
        TailsMode::Mc => TailSource::MonteCarlo(mc),
    };
    let mut opts = DominationOptions::new(args.kinds.clone(), source);
    opts.bound_scale = args.bound_scale;

    let points = grid.points();
    let mut tables = Vec::new();
    let mut reports = Vec::new();
    let mut pass = true;
    for (path, a) in &matrices {
        let report = validate_domination(a, &law, &points, &opts)?;
        pass &= report.pass;

        let mut table = Table::new(&[
            "t",
            "kind",
            "bound",
            "tail",
            "ci_low",
            "ci_high",
            "satisfied",
            "margin",
        ]);
        table.note("matrix", path);
        table.note("tail_method", report.tail_method.as_str());
        table.note("violations", report.violations);
        table.note("pass", report.pass);
        for r in &report.rows {
            table.row(vec![
                num(r.t),
                r.kind.to_string(),
                opt_num(r.bound),
                num(r.tail),
                num(r.ci_low),
                num(r.ci_high),
                r.satisfied.map(|s| s.to_string()).unwrap_or_default(),
                opt_num(r.margin),
            ]);
        }
        tables.push(table);

        let mut entry = to_value(&report)?;
        entry["matrix"] = json!(path);
        reports.push(entry);
    }

    Output {
        config,
        result: json!({ "pass": pass, "reports": reports }),
        tables,
    }
    .emit()?;
    Ok(if pass { 0 } else { 1 })
}
