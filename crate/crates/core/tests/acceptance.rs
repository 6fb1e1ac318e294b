//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use common::{random_graph, AllPairs};
use hubpath::hubnet::{network_stats, HubNetwork};
use hubpath::index::{to_bytes, CoreHubOracle, LabelSide};
use hubpath::query::{estimate, estimate_full_join, Searcher};
use hubpath::synth::{gen_edges, SynthKind};
use hubpath::workload::{PairFilter, Workload};
use hubpath::{
    build, deserialize, discover, select_hubs, validate_path, verify_distance_preserving, Graph, Hub2Index, HubSet,
    QueryResult, VertexId,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

struct Named {
    name: String,
    g: Graph,
}

/// ER(2000, avg degree 10) and BA(2000, m0 = 5), seeds 1..=3.
fn sweep_graphs() -> Vec<Named> {
    let mut out = Vec::new();
    for seed in 1..=3u64 {
        out.push(Named {
            name: format!("er-{seed}"),
            g: Graph::from_edges(2000, &gen_edges(SynthKind::Er, 2000, 10.0, seed).unwrap(), false),
        });
        out.push(Named {
            name: format!("ba-{seed}"),
            g: Graph::from_edges(2000, &gen_edges(SynthKind::Ba, 2000, 5.0, seed).unwrap(), false),
        });
    }
    out
}

/// 20 graphs with n <= 300: ER and BA, directed and undirected.
fn small_suite() -> Vec<(Named, HubSet, u32)> {
    (0..20u64)
        .map(|i| {
            let n = 110 + 10 * i as usize;
            let (ba, directed) = (i % 2 == 0, i % 4 >= 2);
            let g = random_graph(n, ba, directed, 100 + i);
            let hubs = select_hubs(&g, n / 20);
            let k = 3 + (i % 4) as u32;
            let name = format!("{}{}-{n}", if ba { "ba" } else { "er" }, if directed { "-dir" } else { "" });
            (Named { name, g }, hubs, k)
        })
        .collect()
}

fn one_percent(g: &Graph) -> HubSet {
    select_hubs(g, g.n() / 100)
}

fn path_ok(g: &Graph, r: &QueryResult, s: VertexId, t: VertexId) -> bool {
    match (r.distance, &r.path) {
        (Some(d), Some(p)) => validate_path(g, p) && p.len() as u32 == d && p.first() == Some(s) && p.last() == Some(t),
        (None, None) => true,
        _ => false,
    }
}

fn median(mut v: Vec<u64>) -> f64 {
    v.sort_unstable();
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m] as f64
    } else {
        (v[m - 1] + v[m]) as f64 / 2.0
    }
}

fn exactness(graphs: &[Named]) -> Outcome {
    let start = Instant::now();
    let (mut queries, mut mismatches, mut bad_paths) = (0u64, 0u64, 0u64);
    for (gi, ng) in graphs.iter().enumerate() {
        let g = &ng.g;
        let hubs = one_percent(g);
        let mut q = Searcher::new(g.n());
        for k in [4, 6] {
            let idx = build(g, &hubs, k).unwrap();
            let net = discover(g, &hubs, k);
            let w = Workload::generate(g, &hubs, k, 1000, 1000 + gi as u64, PairFilter::default()).unwrap();
            for &(s, t) in &w.pairs {
                let truth = q.bfs(g, s, t, k);
                queries += 1;
                bad_paths += u64::from(!path_ok(g, &truth, s, t));
                for r in [q.bibfs(g, s, t, k), q.hn(g, &hubs, &net, s, t, k), q.hl(g, &idx, s, t).unwrap()] {
                    if r.distance != truth.distance {
                        mismatches += 1;
                        eprintln!("  {} {} k={k} ({s},{t}): {:?} vs bfs {:?}", ng.name, r.stats.engine, r.distance, truth.distance);
                    }
                    bad_paths += u64::from(!path_ok(g, &r, s, t));
                }
            }
        }
    }
    let took = start.elapsed();
    outcome(
        mismatches == 0 && bad_paths == 0 && took < Duration::from_secs(120),
        format!("{queries} pairs x 3 engines vs bfs: {mismatches} mismatches, {bad_paths} invalid paths, {took:.1?} (limit 120s)"),
    )
}

fn preservation(graphs: &[Named]) -> Outcome {
    let start = Instant::now();
    let (mut checked, mut failures, mut bound_violations) = (0usize, 0usize, 0usize);
    let mut worst = String::new();
    for ng in graphs {
        let hubs = one_percent(&ng.g);
        for k in [4, 6] {
            let net = discover(&ng.g, &hubs, k);
            let r = verify_distance_preserving(&ng.g, &hubs, &net, k);
            checked += r.checked;
            failures += r.failures.len();
            let bound = net.size_bound(&hubs);
            if net.len() as u64 > bound {
                bound_violations += 1;
            }
            if k == 6 && worst.is_empty() {
                worst = format!("{}: |H*|={} bound={bound}", ng.name, net.len());
            }
        }
    }
    let took = start.elapsed();
    outcome(
        failures == 0 && bound_violations == 0 && took < Duration::from_secs(60),
        format!("{checked} hub pairs, {failures} not preserved, {bound_violations} size-bound violations ({worst}), {took:.1?} (limit 60s)"),
    )
}

fn label_sets(idx: &Hub2Index, v: VertexId, side: LabelSide) -> std::collections::BTreeSet<(VertexId, u32)> {
    if idx.hubs().contains(v) {
        return [(v, 0)].into();
    }
    let t = match side {
        LabelSide::Out => idx.out_labels(),
        LabelSide::In => idx.in_labels(),
    };
    t.labels(v).iter().map(|e| (idx.hubs().id(e.hub_rank), u32::from(e.dist))).collect()
}

fn labels(suite: &[(Named, HubSet, u32)]) -> Outcome {
    let (mut compared, mut mismatches, mut total) = (0usize, 0usize, 0usize);
    for (ng, hubs, k) in suite {
        let idx = build(&ng.g, hubs, *k).unwrap();
        let oracle = CoreHubOracle::new(&ng.g, hubs, *k);
        for v in 0..ng.g.n() as VertexId {
            for side in [LabelSide::Out, LabelSide::In] {
                let got = label_sets(&idx, v, side);
                compared += 1;
                total += got.len();
                if got != oracle.core_hubs(v, side) {
                    mismatches += 1;
                }
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{} graphs, {compared} label sets ({total} entries) vs definition: {mismatches} mismatches", suite.len()),
    )
}

fn exactness_by_case(suite: &[(Named, HubSet, u32)]) -> Outcome {
    let (mut with_hub, mut without_hub, mut est_bad, mut hp_bad) = (0usize, 0usize, 0usize, 0usize);
    for (ng, hubs, k) in suite {
        let g = &ng.g;
        let k = *k;
        let idx = build(g, hubs, k).unwrap();
        let truth = AllPairs::new(g);
        let mut q = Searcher::new(g.n());
        for s in 0..g.n() as VertexId {
            for t in 0..g.n() as VertexId {
                let Some(d) = truth.within(s, t, k) else { continue };
                if s == t {
                    continue;
                }
                if truth.through_hub(hubs.ids(), s, t) {
                    with_hub += 1;
                    est_bad += usize::from(estimate(&idx, s, t).value != Some(d));
                } else {
                    without_hub += 1;
                    hp_bad += usize::from(q.hp_bbfs(g, hubs, s, t, k + 1).distance != Some(d));
                }
            }
        }
    }
    outcome(
        est_bad == 0 && hp_bad == 0,
        format!(
            "{with_hub} pairs through a hub: {est_bad} inexact estimates; {without_hub} hub-free pairs: {hp_bad} inexact hub-pruned searches"
        ),
    )
}

struct BigBa {
    g: Graph,
    hubs: HubSet,
    idx: Hub2Index,
    net: HubNetwork,
}

fn big_ba() -> BigBa {
    let g = Graph::from_edges(20_000, &gen_edges(SynthKind::Ba, 20_000, 5.0, 1).unwrap(), false);
    let hubs = one_percent(&g);
    let idx = build(&g, &hubs, 6).unwrap();
    let net = discover(&g, &hubs, 6);
    BigBa { g, hubs, idx, net }
}

fn search_space(b: &BigBa, sweep: &[Named]) -> Outcome {
    let start = Instant::now();
    let filter = PairFilter { min_dist: None, non_hub_only: true };
    let w = Workload::generate(&b.g, &b.hubs, 6, 1000, 5, filter).unwrap();
    let mut q = Searcher::new(b.g.n());
    q.set_trace(true);
    let (mut hl_visits, mut bi_visits) = (Vec::new(), Vec::new());
    let mut expanded_hubs = 0usize;
    let mut disagreements = 0usize;
    for &(s, t) in &w.pairs {
        let hl = q.hl(&b.g, &b.idx, s, t).unwrap();
        expanded_hubs += q.trace().iter().filter(|&&v| b.hubs.contains(v)).count();
        let bi = q.bibfs(&b.g, s, t, 6);
        disagreements += usize::from(hl.distance != bi.distance);
        hl_visits.push(hl.stats.visited);
        bi_visits.push(bi.stats.visited);
    }
    // the exactness sweep graphs too, for the zero-tolerance part
    let mut sweep_queries = 0usize;
    for ng in sweep {
        let hubs = one_percent(&ng.g);
        let idx = build(&ng.g, &hubs, 6).unwrap();
        let mut q = Searcher::new(ng.g.n());
        q.set_trace(true);
        let w = Workload::generate(&ng.g, &hubs, 6, 500, 77, PairFilter::default()).unwrap();
        for &(s, t) in &w.pairs {
            q.hl(&ng.g, &idx, s, t).unwrap();
            sweep_queries += 1;
            expanded_hubs += q.trace().iter().filter(|&&v| hubs.contains(v)).count();
        }
    }
    let (mh, mb) = (median(hl_visits.clone()), median(bi_visits.clone()));
    let mean = |v: &[u64]| v.iter().sum::<u64>() as f64 / v.len() as f64;
    let took = start.elapsed();
    outcome(
        expanded_hubs == 0 && disagreements == 0 && mh <= 0.5 * mb && took < Duration::from_secs(180),
        format!(
            "BA(20000, m0=5), {} hubs, k=6, {} non-hub pairs: median visited hl {mh} vs bibfs {mb} (ratio {:.3}, limit 0.5), mean {:.1} vs {:.1}; hubs expanded {expanded_hubs} over {} queries; {disagreements} distance disagreements, {took:.1?} (limit 180s)",
            b.hubs.len(),
            w.pairs.len(),
            mh / mb,
            mean(&hl_visits),
            mean(&bi_visits),
            w.pairs.len() + sweep_queries,
        ),
    )
}

fn degree_reduction(b: &BigBa) -> Outcome {
    let st = network_stats(&b.g, &b.hubs, &b.net);
    outcome(
        st.avg_hub_degree_network < st.avg_hub_degree_original,
        format!(
            "|H*|={} avg hub degree {:.2} in G vs {:.2} in G[H*], ratio {:.4}",
            st.size_hstar,
            st.avg_hub_degree_original,
            st.avg_hub_degree_network,
            st.degree_ratio()
        ),
    )
}

fn early_termination(sweep: &[Named], suite: &[(Named, HubSet, u32)], b: &BigBa) -> Outcome {
    let mut indexes: Vec<(&Graph, Hub2Index)> = Vec::new();
    for ng in sweep {
        indexes.push((&ng.g, build(&ng.g, &one_percent(&ng.g), 6).unwrap()));
    }
    for (ng, hubs, k) in suite {
        indexes.push((&ng.g, build(&ng.g, hubs, *k).unwrap()));
    }
    let per = 5000usize.div_ceil(indexes.len() + 1);
    let (mut pairs, mut value_diff, mut ops_worse) = (0usize, 0usize, 0usize);
    let (mut lw_ops, mut full_ops) = (0u64, 0u64);
    let mut run = |g: &Graph, idx: &Hub2Index, seed: u64| {
        let w = Workload::generate(g, idx.hubs(), idx.k(), per, seed, PairFilter::default()).unwrap();
        for &(s, t) in &w.pairs {
            let (a, f) = (estimate(idx, s, t), estimate_full_join(idx, s, t));
            pairs += 1;
            value_diff += usize::from(a.value != f.value);
            ops_worse += usize::from(a.join_ops > f.join_ops);
            lw_ops += a.join_ops;
            full_ops += f.join_ops;
        }
    };
    for (i, (g, idx)) in indexes.iter().enumerate() {
        run(g, idx, 500 + i as u64);
    }
    run(&b.g, &b.idx, 499);
    outcome(
        pairs >= 5000 && value_diff == 0 && ops_worse == 0,
        format!(
            "{pairs} pairs on {} indexes: {value_diff} value mismatches, {ops_worse} pairs with more levelwise join ops; total ops {lw_ops} levelwise vs {full_ops} full",
            indexes.len() + 1
        ),
    )
}

fn determinism(sweep: &[Named], suite: &[(Named, HubSet, u32)]) -> Outcome {
    let mut problems = Vec::new();
    let mut files = 0;
    let mut cases: Vec<(&Graph, HubSet, u32)> = sweep.iter().take(2).map(|ng| (&ng.g, one_percent(&ng.g), 6)).collect();
    cases.extend(suite.iter().filter(|(ng, _, _)| ng.g.is_directed()).take(2).map(|(ng, h, k)| (&ng.g, h.clone(), *k)));
    for (g, hubs, k) in cases {
        let a = to_bytes(&build(g, &hubs, k).unwrap()).unwrap();
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = to_bytes(&single.install(|| build(g, &hubs, k)).unwrap()).unwrap();
        files += 1;
        if a != b {
            problems.push("rebuild differs".to_string());
        }
        let back = deserialize(a.as_slice()).unwrap();
        if to_bytes(&back).unwrap() != a || back != build(g, &hubs, k).unwrap() {
            problems.push("round trip differs".to_string());
        }
        let mut rejected = 0;
        let step = (a.len() / 200).max(1);
        let mut tried = 0;
        for i in (0..a.len()).step_by(step) {
            let mut bad = a.clone();
            bad[i] ^= 0x20;
            tried += 1;
            rejected += usize::from(deserialize(bad.as_slice()).is_err());
            tried += 1;
            rejected += usize::from(deserialize(&a[..i]).is_err());
        }
        if rejected != tried {
            problems.push(format!("{} of {tried} corrupted files accepted", tried - rejected));
        }
    }
    outcome(problems.is_empty(), format!("{files} indexes rebuilt, round-tripped and corrupted byte by byte: {problems:?}"))
}

fn symmetric_pairs(sweep: &[Named], suite: &[(Named, HubSet, u32)]) -> Outcome {
    let (mut second, mut violations) = (0usize, 0usize);
    let mut check = |net: &HubNetwork| {
        let mut seen = HashSet::new();
        for p in net.basic_pairs() {
            if !seen.insert((p.source.min(p.target), p.source.max(p.target))) {
                second += 1;
                violations += usize::from(p.added != 0);
            }
        }
    };
    for ng in sweep {
        for k in [4, 6] {
            check(&discover(&ng.g, &one_percent(&ng.g), k));
        }
    }
    for (ng, hubs, k) in suite.iter().filter(|(ng, _, _)| !ng.g.is_directed()) {
        check(&discover(&ng.g, hubs, *k));
    }
    outcome(violations == 0 && second > 0, format!("{second} second discoveries on undirected graphs, {violations} added vertices"))
}

fn main() {
    let sweep = sweep_graphs();
    let suite = small_suite();
    let mut failed = 0;
    let mut report = |id: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("{} [{id}] {name}: {} ({:.1?})", if o.pass { "PASS" } else { "FAIL" }, o.detail, start.elapsed());
    };
    report(1, "exactness sweep", &mut || exactness(&sweep));
    report(2, "distance preservation and size bound", &mut || preservation(&sweep));
    report(3, "label correctness", &mut || labels(&suite));
    report(4, "exactness by case", &mut || exactness_by_case(&suite));
    let big = big_ba();
    report(5, "no hub expansion and search-space reduction", &mut || search_space(&big, &sweep));
    report(6, "hub degree reduction", &mut || degree_reduction(&big));
    report(7, "early-termination equivalence", &mut || early_termination(&sweep, &suite, &big));
    report(8, "determinism and serialization", &mut || determinism(&sweep, &suite));
    report(9, "symmetric-pair instrumentation", &mut || symmetric_pairs(&sweep, &suite));
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}
