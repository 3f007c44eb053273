use std::path::PathBuf;

use clap::Args;
use serde_json::json;
use zbconc::rng::stream_rng;
use zbconc::Result;

use super::{load_law, load_matrix, seed_or_fresh};
use crate::report::{num, to_value, Format, Output, RunConfig, Table};
use crate::OutputArgs;

#[derive(Args, Clone, Debug)]
pub struct SampleArgs {
    #[arg(long, default_value = "uniform")]
    pub law: String,
    /// Number of points permuted.
    #[arg(long)]
    pub n: usize,
    /// Number of permutations to draw.
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also report Y for each draw.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn run(args: &SampleArgs) -> Result<u8> {
    let mut config = RunConfig::new("sample", &args.out, Format::Csv);
    let law = load_law(&args.law)?;
    law.validate(args.n)?;
    let matrix = args.matrix.as_deref().map(load_matrix).transpose()?;
    if let (Some(a), Some(path)) = (&matrix, &args.matrix) {
        if a.n() != args.n {
            return Err(zbconc::Error::Domain(format!(
                "matrix has n = {}, --n is {}",
                a.n(),
                args.n
            )));
        }
        config.inputs.push(path.display().to_string());
    }
    let seed = seed_or_fresh(args.seed);
    config.law = Some(law.to_string());
    config.seed = Some(seed);
    config.param("n", args.n);
    config.param("count", args.count);

    let mut header = vec!["index", "permutation", "cycle_type"];
    if matrix.is_some() {
        header.push("y");
    }
    let mut table = Table::new(&header);
    let mut draws = Vec::new();
    let mut rng = stream_rng(seed, 0);
    for k in 0..args.count {
        let p = law.sample(args.n, &mut rng)?;
        let ct = p.cycle_type();
        let y = matrix.as_ref().map(|a| a.hoeffding_stat(&p)).transpose()?;
        let mut cells = vec![
            k.to_string(),
            join(&p.to_one_based(), " "),
            join(ct.counts(), " "),
        ];
        if let Some(y) = y {
            cells.push(num(y));
        }
        table.row(cells);
        let mut entry = json!({ "permutation": p, "cycle_type": ct });
        if let Some(y) = y {
            entry["y"] = json!(y);
        }
        draws.push(entry);
    }

    Output {
        config,
        result: to_value(&json!({ "draws": draws }))?,
        tables: vec![table],
    }
    .emit()?;
    Ok(0)
}
