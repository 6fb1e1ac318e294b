use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Args;
use hubpath::{discover, network_stats, verify_distance_preserving};

use crate::{parse_k, pick_hubs, GraphArgs};

#[derive(Args)]
pub struct HubnetArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Number of hubs (default 0.5% of n).
    #[arg(long)]
    hubs: Option<usize>,
    #[arg(long, default_value = "6", value_parser = parse_k)]
    k: u32,
    /// Also check distance preservation for every hub pair.
    #[arg(long)]
    verify: bool,
    /// Write the statistics TSV here as well as to stdout.
    #[arg(long)]
    stats_out: Option<PathBuf>,
}

pub fn run(a: HubnetArgs) -> Result<ExitCode> {
    let g = a.graph.load()?;
    let hubs = pick_hubs(&g, a.hubs);
    let net = discover(&g, &hubs, a.k);
    let st = network_stats(&g, &hubs, &net);
    let tsv = format!(
        "hubs\tk\tsize_hstar\tunique_basic_pairs\tsize_bound\tavg_hub_degree_original\tavg_hub_degree_network\tdegree_ratio\n\
         {}\t{}\t{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}\n",
        hubs.len(),
        a.k,
        st.size_hstar,
        net.unique_basic_pairs().len(),
        net.size_bound(&hubs),
        st.avg_hub_degree_original,
        st.avg_hub_degree_network,
        st.degree_ratio(),
    );
    print!("{tsv}");
    if let Some(p) = &a.stats_out {
        fs::write(p, &tsv).with_context(|| format!("writing {}", p.display()))?;
    }
    if a.verify {
        let r = verify_distance_preserving(&g, &hubs, &net, a.k);
        if !r.ok() {
            for f in &r.failures {
                eprintln!("not preserved: ({}, {}) distance {} vs {:?}", f.from, f.to, f.expected, f.found);
            }
            eprintln!("{} of {} hub pairs not preserved", r.failures.len(), r.checked);
            return Ok(ExitCode::FAILURE);
        }
        eprintln!("preserved: {} hub pairs", r.checked);
    }
    Ok(ExitCode::SUCCESS)
}
