use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::Args;
use hubpath::index::{CoreHubOracle, LabelSide};
use hubpath::workload::{PairFilter, Workload};
use hubpath::{discover, validate_path, verify_distance_preserving, Hub2Index, Searcher, VertexId};

use crate::{load_index, parse_k, pick_hubs, GraphArgs};

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Index to check; built in memory when absent.
    #[arg(long)]
    index: Option<PathBuf>,
    /// Number of hubs when no index is given (default 0.5% of n).
    #[arg(long)]
    hubs: Option<usize>,
    /// Distance bound when no index is given.
    #[arg(long, default_value = "6", value_parser = parse_k)]
    k: u32,
    /// Pairs for the engine agreement sweep.
    #[arg(long, default_value = "200")]
    pairs: usize,
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Largest n for which labels are compared against the definition.
    #[arg(long, default_value = "2000")]
    oracle_limit: usize,
}

#[derive(Default)]
struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, name: &str, problems: &[String], detail: String) {
        if problems.is_empty() {
            println!("{name}\tok\t{detail}");
        } else {
            self.failures += 1;
            println!("{name}\tFAIL\t{detail}, {} problem(s)", problems.len());
            for p in problems.iter().take(20) {
                println!("  {p}");
            }
        }
    }
}

fn labels(idx: &Hub2Index, v: VertexId, side: LabelSide) -> BTreeSet<(VertexId, u32)> {
    if idx.hubs().contains(v) {
        return BTreeSet::from([(v, 0)]);
    }
    let t = match side {
        LabelSide::Out => idx.out_labels(),
        LabelSide::In => idx.in_labels(),
    };
    t.labels(v).iter().map(|e| (idx.hubs().id(e.hub_rank), u32::from(e.dist))).collect()
}

pub fn run(a: VerifyArgs) -> Result<ExitCode> {
    let g = a.graph.load()?;
    let mut report = Report::default();

    let idx = match &a.index {
        Some(p) => match load_index(p, &g) {
            Ok(idx) => {
                report.check("index", &[], format!("{} read and matches the graph", p.display()));
                idx
            }
            Err(e) => {
                report.check("index", &[format!("{e:#}")], format!("{}", p.display()));
                println!("verification failed: {} check(s)", report.failures);
                return Ok(ExitCode::FAILURE);
            }
        },
        None => hubpath::build(&g, &pick_hubs(&g, a.hubs), a.k)?,
    };
    let (hubs, k) = (idx.hubs(), idx.k());

    let net = discover(&g, hubs, k);
    let pres = verify_distance_preserving(&g, hubs, &net, k);
    let problems: Vec<String> = pres
        .failures
        .iter()
        .map(|f| format!("hubs ({}, {}): distance {} in G, {:?} in G[H*]", f.from, f.to, f.expected, f.found))
        .collect();
    report.check("preservation", &problems, format!("{} hub pairs, |H*| = {}", pres.checked, net.len()));

    let bound = net.size_bound(hubs);
    let problems = if net.len() as u64 <= bound { vec![] } else { vec![format!("|H*| = {} > {bound}", net.len())] };
    report.check("size_bound", &problems, format!("|H*| = {} <= {bound}", net.len()));

    if g.n() <= a.oracle_limit {
        let oracle = CoreHubOracle::new(&g, hubs, k);
        let mut problems = Vec::new();
        for v in 0..g.n() as VertexId {
            for side in [LabelSide::Out, LabelSide::In] {
                let (got, want) = (labels(&idx, v, side), oracle.core_hubs(v, side));
                if got != want {
                    problems.push(format!("vertex {v} {side:?}: index {got:?}, definition {want:?}"));
                }
            }
        }
        report.check("labels", &problems, format!("{} vertices", g.n()));
    } else {
        println!("labels\tskipped\tn = {} > {}", g.n(), a.oracle_limit);
    }

    let w = Workload::generate(&g, hubs, k, a.pairs, a.seed, PairFilter::default())?;
    let mut q = Searcher::new(g.n());
    let mut problems = Vec::new();
    for &(s, t) in &w.pairs {
        let truth = q.bfs(&g, s, t, k).distance;
        let results = [q.bibfs(&g, s, t, k), q.hn(&g, hubs, &net, s, t, k), q.hl(&g, &idx, s, t)?];
        for r in results {
            let path_ok = match (&r.distance, &r.path) {
                (Some(d), Some(p)) => {
                    validate_path(&g, p) && p.len() as u32 == *d && p.first() == Some(s) && p.last() == Some(t)
                }
                (None, None) => true,
                _ => false,
            };
            if r.distance != truth || !path_ok {
                problems.push(format!("{} on ({s}, {t}): {:?}, bfs {:?}", r.stats.engine, r.distance, truth));
            }
        }
    }
    report.check("engines", &problems, format!("{} pairs, k = {k}", w.pairs.len()));

    if report.failures > 0 {
        println!("verification failed: {} check(s)", report.failures);
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
