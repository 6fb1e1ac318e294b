use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hubpath::{default_hub_count, load_edge_list, select_hubs, Graph, Hub2Index, HubSet};

mod bench;
mod build;
mod gen;
mod hubnet;
mod query;
mod verify;

#[derive(Parser)]
#[command(name = "hubpath", version, about = "Exact k-degree shortest paths with hub networks and hub-pair labels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Hub² index file.
    Build(build::BuildArgs),
    /// Answer shortest-path queries.
    Query(query::QueryArgs),
    /// Time engines over a seeded workload.
    Bench(bench::BenchArgs),
    /// Check an index and all engines against exact oracles.
    Verify(verify::VerifyArgs),
    /// Discover the hub-network and report its statistics.
    Hubnet(hubnet::HubnetArgs),
    /// Write a synthetic edge list.
    Gen(gen::GenArgs),
}

#[derive(Args, Clone)]
pub struct GraphArgs {
    /// Edge list, one `u v` pair per line, `#` comments.
    #[arg(long)]
    pub graph: PathBuf,
    /// Treat edges as directed.
    #[arg(long)]
    pub directed: bool,
}

impl GraphArgs {
    pub fn load(&self) -> Result<Graph> {
        let f = File::open(&self.graph).with_context(|| format!("opening {}", self.graph.display()))?;
        load_edge_list(BufReader::new(f), self.directed).with_context(|| format!("loading {}", self.graph.display()))
    }
}

/// Distance bound; 1..=254 because distances are stored in one byte.
pub fn parse_k(s: &str) -> Result<u32, String> {
    let k: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if !(1..=hubpath::index::MAX_K).contains(&k) {
        return Err(format!("k must be between 1 and {}", hubpath::index::MAX_K));
    }
    Ok(k)
}

pub fn pick_hubs(g: &Graph, beta: Option<usize>) -> HubSet {
    select_hubs(g, beta.unwrap_or_else(|| default_hub_count(g.n())))
}

pub fn load_index(path: &Path, g: &Graph) -> Result<Hub2Index> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let idx = hubpath::deserialize(BufReader::new(f)).with_context(|| format!("reading index {}", path.display()))?;
    idx.check_graph(g).with_context(|| format!("index {}", path.display()))?;
    Ok(idx)
}

/// Runs `f` on a pool of `threads` workers, or on rayon's default pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        Some(t) => Ok(rayon::ThreadPoolBuilder::new().num_threads(t).build()?.install(f)),
        None => Ok(f()),
    }
}

pub fn check_vertex(g: &Graph, v: u32) -> Result<()> {
    if v as usize >= g.n() {
        bail!("vertex {v} out of range (n = {})", g.n());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(a) => build::run(a),
        Command::Query(a) => query::run(a),
        Command::Bench(a) => bench::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Hubnet(a) => hubnet::run(a),
        Command::Gen(a) => gen::run(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
