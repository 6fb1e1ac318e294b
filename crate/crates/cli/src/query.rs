use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::Args;
use hubpath::{discover, Engine, HubSet, Searcher};

use crate::{check_vertex, load_index, parse_k, pick_hubs, GraphArgs};

#[derive(Args)]
pub struct QueryArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Prebuilt index; its hubs are used by `hn` as well.
    #[arg(long)]
    index: Option<PathBuf>,
    /// Number of hubs when no index is given (default 0.5% of n).
    #[arg(long)]
    hubs: Option<usize>,
    #[arg(long, default_value = "hl")]
    engine: Engine,
    /// Distance bound (default: the index bound, else 6).
    #[arg(long, value_parser = parse_k)]
    k: Option<u32>,
    /// Query endpoints as `s t` pairs.
    #[arg(required = true, num_args = 2.., value_name = "S T")]
    vertices: Vec<u32>,
}

pub fn run(a: QueryArgs) -> Result<ExitCode> {
    if a.vertices.len() % 2 != 0 {
        bail!("expected an even number of vertex ids (s t pairs)");
    }
    let g = a.graph.load()?;
    for &v in &a.vertices {
        check_vertex(&g, v)?;
    }
    let idx = a.index.as_deref().map(|p| load_index(p, &g)).transpose()?;
    let k = match (a.k, &idx) {
        (Some(k), Some(idx)) if k > idx.k() => bail!("--k {k} exceeds the index bound {}", idx.k()),
        (Some(k), _) => k,
        (None, Some(idx)) => idx.k(),
        (None, None) => 6,
    };
    let hubs: HubSet = match &idx {
        Some(idx) => idx.hubs().clone(),
        None => pick_hubs(&g, a.hubs),
    };
    let idx = match (a.engine, idx) {
        (Engine::Hub2, None) => Some(hubpath::build(&g, &hubs, k)?),
        (_, idx) => idx,
    };
    let net = (a.engine == Engine::HubNetwork).then(|| discover(&g, &hubs, k));

    let mut q = Searcher::new(g.n());
    for st in a.vertices.chunks(2) {
        let (s, t) = (st[0], st[1]);
        let r = match a.engine {
            Engine::Bfs => q.bfs(&g, s, t, k),
            Engine::Bibfs => q.bibfs(&g, s, t, k),
            Engine::HubNetwork => q.hn(&g, &hubs, net.as_ref().unwrap(), s, t, k),
            Engine::Hub2 => q.hl_within(&g, idx.as_ref().unwrap(), s, t, k)?,
        };
        match (r.distance, r.path) {
            (Some(d), Some(p)) => println!("dist={d} path={p} visited={}", r.stats.visited),
            _ => println!("dist=none path=none visited={}", r.stats.visited),
        }
    }
    Ok(ExitCode::SUCCESS)
}
