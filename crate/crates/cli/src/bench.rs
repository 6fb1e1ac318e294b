use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Args;
use hubpath::hubnet::HubNetwork;
use hubpath::workload::{PairFilter, Workload};
use hubpath::{discover, Engine, Graph, Hub2Index, HubSet, IndexError, QueryResult, Searcher, VertexId};
use rayon::prelude::*;
use serde::Serialize;

use crate::{load_index, parse_k, pick_hubs, with_threads, GraphArgs};

#[derive(Args)]
pub struct BenchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Index file; required for the `hn` and `hl` engines.
    #[arg(long)]
    index: Option<PathBuf>,
    /// Number of hubs for workload filtering when no index is given.
    #[arg(long)]
    hubs: Option<usize>,
    /// Distance bound (default: the index bound, else 6).
    #[arg(long, value_parser = parse_k)]
    k: Option<u32>,
    #[arg(long, default_value = "1000")]
    pairs: usize,
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Comma-separated subset of bfs, bibfs, hn, hl.
    #[arg(long, value_delimiter = ',', default_value = "bfs,bibfs,hn,hl")]
    engines: Vec<Engine>,
    /// Keep only pairs at distance at least this (and at most k).
    #[arg(long)]
    min_dist: Option<u32>,
    /// Keep only pairs whose endpoints are both non-hubs.
    #[arg(long)]
    non_hub_only: bool,
    /// Per-query JSON lines output.
    #[arg(long)]
    records: Option<PathBuf>,
    /// Parallelise across pairs with this many workers.
    #[arg(long, env = "HUBPATH_THREADS")]
    threads: Option<usize>,
}

#[derive(Serialize)]
struct BenchRecord {
    engine: &'static str,
    s: VertexId,
    t: VertexId,
    distance: Option<u32>,
    time_ns: u64,
    visited: u64,
    join_ops: u64,
}

struct Ctx<'a> {
    g: &'a Graph,
    hubs: &'a HubSet,
    idx: Option<&'a Hub2Index>,
    net: Option<&'a HubNetwork>,
    k: u32,
}

impl Ctx<'_> {
    fn run(&self, q: &mut Searcher, e: Engine, s: VertexId, t: VertexId) -> Result<QueryResult, IndexError> {
        Ok(match e {
            Engine::Bfs => q.bfs(self.g, s, t, self.k),
            Engine::Bibfs => q.bibfs(self.g, s, t, self.k),
            Engine::HubNetwork => q.hn(self.g, self.hubs, self.net.unwrap(), s, t, self.k),
            Engine::Hub2 => q.hl_within(self.g, self.idx.unwrap(), s, t, self.k)?,
        })
    }

    fn timed(&self, q: &mut Searcher, e: Engine, s: VertexId, t: VertexId) -> Result<BenchRecord, IndexError> {
        let start = Instant::now();
        let r = self.run(q, e, s, t)?;
        let time_ns = start.elapsed().as_nanos() as u64;
        Ok(BenchRecord {
            engine: e.name(),
            s,
            t,
            distance: r.distance,
            time_ns,
            visited: r.stats.visited,
            join_ops: r.stats.join_ops,
        })
    }

    /// One pass over `pairs`; records come back in pair order either way.
    fn pass(&self, e: Engine, pairs: &[(VertexId, VertexId)], parallel: bool) -> Result<Vec<BenchRecord>, IndexError> {
        let n = self.g.n();
        if parallel {
            pairs.par_iter().map_init(|| Searcher::new(n), |q, &(s, t)| self.timed(q, e, s, t)).collect()
        } else {
            let mut q = Searcher::new(n);
            pairs.iter().map(|&(s, t)| self.timed(&mut q, e, s, t)).collect()
        }
    }
}

fn median(mut v: Vec<u64>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_unstable();
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m] as f64
    } else {
        (v[m - 1] + v[m]) as f64 / 2.0
    }
}

fn mean(v: impl Iterator<Item = u64>) -> f64 {
    let (sum, count) = v.fold((0u128, 0u64), |(s, c), x| (s + x as u128, c + 1));
    if count == 0 {
        0.0
    } else {
        sum as f64 / count as f64
    }
}

pub fn run(a: BenchArgs) -> Result<ExitCode> {
    let mut engines: Vec<Engine> = Vec::new();
    for &e in &a.engines {
        if !engines.contains(&e) {
            engines.push(e);
        }
    }
    let needs_index = engines.iter().any(|e| matches!(e, Engine::Hub2 | Engine::HubNetwork));
    if needs_index && a.index.is_none() {
        bail!("engines hn and hl need --index");
    }
    let g = a.graph.load()?;
    let idx = a.index.as_deref().map(|p| load_index(p, &g)).transpose()?;
    let k = match (a.k, &idx) {
        (Some(k), Some(idx)) if k > idx.k() => bail!("--k {k} exceeds the index bound {}", idx.k()),
        (Some(k), _) => k,
        (None, Some(idx)) => idx.k(),
        (None, None) => 6,
    };
    let hubs = match &idx {
        Some(idx) => idx.hubs().clone(),
        None => pick_hubs(&g, a.hubs),
    };
    let net = engines.contains(&Engine::HubNetwork).then(|| discover(&g, &hubs, k));
    let filter = PairFilter { min_dist: a.min_dist, non_hub_only: a.non_hub_only };
    let workload = Workload::generate(&g, &hubs, k, a.pairs, a.seed, filter)?;
    let ctx = Ctx { g: &g, hubs: &hubs, idx: idx.as_ref(), net: net.as_ref(), k };

    let mut sink = match &a.records {
        Some(p) => Some(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => None,
    };
    println!("engine\tpairs\tfound\tmean_ns\tmedian_ns\tmean_visited\tmedian_visited\tmean_join_ops");
    for &e in &engines {
        let parallel = a.threads.is_some_and(|t| t > 1);
        let records = with_threads(a.threads, || -> Result<Vec<BenchRecord>, IndexError> {
            // warm-up
            ctx.pass(e, &workload.pairs, parallel)?;
            ctx.pass(e, &workload.pairs, parallel)
        })??;
        if let Some(w) = sink.as_mut() {
            for r in &records {
                serde_json::to_writer(&mut *w, r)?;
                w.write_all(b"\n")?;
            }
        }
        println!(
            "{}\t{}\t{}\t{:.0}\t{:.0}\t{:.2}\t{:.1}\t{:.2}",
            e,
            records.len(),
            records.iter().filter(|r| r.distance.is_some()).count(),
            mean(records.iter().map(|r| r.time_ns)),
            median(records.iter().map(|r| r.time_ns).collect()),
            mean(records.iter().map(|r| r.visited)),
            median(records.iter().map(|r| r.visited).collect()),
            mean(records.iter().map(|r| r.join_ops)),
        );
    }
    if let Some(mut w) = sink {
        w.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}
