use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Args;
use hubpath::index::index_stats;

use crate::{parse_k, pick_hubs, with_threads, GraphArgs};

#[derive(Args)]
pub struct BuildArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Number of hubs (default 0.5% of n).
    #[arg(long)]
    hubs: Option<usize>,
    #[arg(long, default_value = "6", value_parser = parse_k)]
    k: u32,
    /// Index file to write.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads for the labeling traversals.
    #[arg(long, env = "HUBPATH_THREADS")]
    threads: Option<usize>,
}

pub fn run(a: BuildArgs) -> Result<ExitCode> {
    let g = a.graph.load()?;
    let hubs = pick_hubs(&g, a.hubs);
    let start = Instant::now();
    let idx = with_threads(a.threads, || hubpath::build(&g, &hubs, a.k))??;
    let build_ms = start.elapsed().as_secs_f64() * 1e3;
    let f = File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    hubpath::serialize(&idx, BufWriter::new(f)).with_context(|| format!("writing {}", a.out.display()))?;
    let st = index_stats(&idx);
    println!("n\tm\thubs\tk\tavg_label_count\tmax_label_count\tmatrix_finite_fraction\tmatrix_entries\tbytes\tbuild_ms");
    println!(
        "{}\t{}\t{}\t{}\t{:.4}\t{}\t{:.4}\t{}\t{}\t{:.1}",
        g.n(),
        g.m(),
        hubs.len(),
        a.k,
        st.avg_label_count,
        st.max_label_count,
        st.matrix_finite_fraction,
        st.matrix_entries,
        st.bytes,
        build_ms
    );
    Ok(ExitCode::SUCCESS)
}
