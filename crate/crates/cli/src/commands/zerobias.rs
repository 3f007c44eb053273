use clap::{Args, ValueEnum};
use serde_json::json;
use zbconc::formats::parse_dist;
use zbconc::rng::stream_rng;
use zbconc::zerobias::{convolve, sample_zero_bias, zero_bias_transform, SumCoupling};
use zbconc::{DiscreteDist, Result};

use super::seed_or_fresh;
use crate::report::{num, to_value, Format, Output, RunConfig, Table};
use crate::OutputArgs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    /// Breakpoints and densities of the zero-bias law.
    Density,
    /// Draws from the zero-bias law.
    Samples,
    /// `E[Y^(k+1)]` next to `sigma^2 k E[(Y*)^(k-1)]` for k = 1..=5.
    Moments,
    /// `(Y, Y*)` draws from the replace-one-summand coupling.
    Coupling,
}

#[derive(Args, Clone, Debug)]
pub struct ZerobiasArgs {
    /// Distribution as JSON {"atoms": [[v, p], ..]} or @file; repeat for
    /// an independent sum.
    #[arg(long = "dist", required = true)]
    pub dists: Vec<String>,
    #[arg(long, value_enum, default_value = "density")]
    pub emit: Emit,
    /// Number of draws for samples and coupling.
    #[arg(long = "count", visible_alias = "n", default_value_t = 1000)]
    pub count: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: &ZerobiasArgs) -> Result<u8> {
    let mut config = RunConfig::new("zerobias", &args.out, Format::Json);
    let components = args
        .dists
        .iter()
        .map(|d| parse_dist(d))
        .collect::<Result<Vec<DiscreteDist>>>()?;
    config.inputs = args.dists.clone();
    config.param("emit", args.emit);

    let sum = convolve(&components)?;
    let density = zero_bias_transform(&sum)?;
    let sigma2 = sum.moments().variance;

    let (result, table) = match args.emit {
        Emit::Density => {
            let mut table = Table::new(&["left", "right", "density"]);
            table.note("sigma2", num(sigma2));
            let bp = density.breakpoints();
            for (w, d) in bp.windows(2).zip(density.densities()) {
                table.row(vec![num(w[0]), num(w[1]), num(*d)]);
            }
            let result = json!({
                "sigma2": sigma2,
                "breakpoints": bp,
                "densities": density.densities(),
            });
            (result, table)
        }
        Emit::Samples => {
            let seed = seed_or_fresh(args.seed);
            config.seed = Some(seed);
            config.param("count", args.count);
            let mut rng = stream_rng(seed, 0);
            let draws: Vec<f64> = (0..args.count)
                .map(|_| sample_zero_bias(&density, &mut rng))
                .collect();
            let mut table = Table::new(&["index", "ystar"]);
            for (k, x) in draws.iter().enumerate() {
                table.row(vec![k.to_string(), num(*x)]);
            }
            (json!({ "samples": draws }), table)
        }
        Emit::Moments => {
            let mut table = Table::new(&["k", "lhs", "rhs"]);
            table.note("sigma2", num(sigma2));
            let mut rows = Vec::new();
            for k in 1..=5u32 {
                let lhs = sum.raw_moment(k + 1);
                let rhs = sigma2 * k as f64 * density.raw_moment(k - 1);
                table.row(vec![k.to_string(), num(lhs), num(rhs)]);
                rows.push(json!({ "k": k, "lhs": lhs, "rhs": rhs }));
            }
            (json!({ "sigma2": sigma2, "rows": rows }), table)
        }
        Emit::Coupling => {
            let seed = seed_or_fresh(args.seed);
            config.seed = Some(seed);
            config.param("count", args.count);
            let coupling = SumCoupling::new(components)?;
            let mut rng = stream_rng(seed, 0);
            let mut table = Table::new(&["index", "y", "ystar", "replaced"]);
            let mut draws = Vec::new();
            for k in 0..args.count {
                let s = coupling.sample(&mut rng);
                table.row(vec![
                    k.to_string(),
                    num(s.y),
                    num(s.ystar),
                    (s.replaced_index + 1).to_string(),
                ]);
                draws.push(json!({ "y": s.y, "ystar": s.ystar, "replaced": s.replaced_index + 1 }));
            }
            (
                json!({ "index_probs": coupling.index_probs(), "draws": draws }),
                table,
            )
        }
    };

    Output {
        config,
        result: to_value(&result)?,
        tables: vec![table],
    }
    .emit()?;
    Ok(0)
}
