use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Args;
use hubpath::synth::{gen_synthetic, SynthKind};

#[derive(Args)]
pub struct GenArgs {
    /// One of er, ba, star, chain.
    kind: SynthKind,
    #[arg(long)]
    n: usize,
    /// Average degree for er, edges per new vertex for ba; unused otherwise.
    #[arg(long, default_value = "3")]
    param: f64,
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(a: GenArgs) -> Result<ExitCode> {
    let bytes = gen_synthetic(a.kind, a.n, a.param, a.seed)?;
    match &a.out {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(ExitCode::SUCCESS)
}
