use std::path::PathBuf;

use clap::Args;
use serde_json::json;
use zbconc::bounds::{chatterjee_crossover, regime_threshold};
use zbconc::oracle::{exact_moments, EnumCaps};
use zbconc::permstat::{coupling_constant, law_moments};
use zbconc::{PermLaw, Result};

use super::{load_law, load_matrices};
use crate::report::{num, opt_num, to_value, Format, Output, RunConfig, Table};
use crate::OutputArgs;

#[derive(Args, Clone, Debug)]
pub struct MomentsArgs {
    /// Matrix file (CSV or JSON); repeatable.
    #[arg(long = "matrix", required = true)]
    pub matrices: Vec<PathBuf>,
    #[arg(long, default_value = "uniform")]
    pub law: String,
    /// Also compute mean and variance by full enumeration.
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: &MomentsArgs) -> Result<u8> {
    let mut config = RunConfig::new("moments", &args.out, Format::Csv);
    let law = load_law(&args.law)?;
    let matrices = load_matrices(&args.matrices)?;
    config.inputs = matrices.iter().map(|(p, _)| p.clone()).collect();
    config.law = Some(law.to_string());
    config.param("exact", args.exact);

    let mut header = vec![
        "matrix",
        "n",
        "mu",
        "sigma2",
        "c",
        "regime_threshold",
        "chatterjee_crossover",
    ];
    if args.exact {
        header.extend(["exact_mu", "exact_sigma2"]);
    }
    header.push("note");
    let mut table = Table::new(&header);
    let mut results = Vec::new();

    for (path, a) in &matrices {
        let m = law_moments(a, &law)?;
        let (c, note) = match coupling_constant(a, &law) {
            Ok(c) => (Some(c), String::new()),
            Err(e) => (None, format!("no coupling constant: {e}").replace(',', ";")),
        };
        let threshold = c.and_then(|c| regime_threshold(m.sigma2, c).ok());
        let crossover = match law {
            PermLaw::UniformSn => chatterjee_crossover(m.mu, m.sigma2).ok(),
            _ => None,
        };
        let exact = if args.exact {
            Some(exact_moments(a, &law, &EnumCaps::default())?)
        } else {
            None
        };

        let mut cells = vec![
            path.clone(),
            a.n().to_string(),
            num(m.mu),
            num(m.sigma2),
            opt_num(c),
            opt_num(threshold),
            opt_num(crossover),
        ];
        if let Some((em, ev)) = exact {
            cells.extend([num(em), num(ev)]);
        }
        cells.push(note.clone());
        table.row(cells);

        let mut entry = json!({
            "matrix": path,
            "n": a.n(),
            "mu": m.mu,
            "sigma2": m.sigma2,
            "c": c,
            "regime_threshold": threshold,
            "chatterjee_crossover": crossover,
            "note": note,
        });
        if let Some((em, ev)) = exact {
            entry["exact_mu"] = json!(em);
            entry["exact_sigma2"] = json!(ev);
        }
        results.push(entry);
    }

    Output {
        config,
        result: to_value(&json!({ "matrices": results }))?,
        tables: vec![table],
    }
    .emit()?;
    Ok(0)
}
