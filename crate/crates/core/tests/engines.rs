mod common;

use common::{from_pairs, random_graph, AllPairs};
use hubpath::graph::bounded_bfs_within;
use hubpath::query::{estimate, estimate_full_join, reconstruct_estimated_path, Searcher};
use hubpath::synth::{gen_edges, SynthKind};
use hubpath::{build, discover, select_hubs, validate_path, Graph, QueryResult, VertexId};
use proptest::prelude::*;

fn check_result(g: &Graph, r: &QueryResult, s: VertexId, t: VertexId) -> Result<(), TestCaseError> {
    prop_assert_eq!(r.distance.is_some(), r.path.is_some());
    if let (Some(d), Some(p)) = (r.distance, &r.path) {
        prop_assert!(validate_path(g, p), "invalid path {}", p);
        prop_assert_eq!(p.len() as u32, d);
        prop_assert_eq!((p.first(), p.last()), (Some(s), Some(t)));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn engines_agree_with_bfs(
        n in 2usize..40,
        pairs in proptest::collection::vec((0u32..40, 0u32..40), 0..120),
        directed in any::<bool>(),
        beta in 1usize..8,
        k in 1u32..7,
    ) {
        let g = from_pairs(n, &pairs, directed);
        let hubs = select_hubs(&g, beta);
        let net = discover(&g, &hubs, k);
        let idx = build(&g, &hubs, k).unwrap();
        let truth = AllPairs::new(&g);
        let mut q = Searcher::new(g.n());
        for s in 0..g.n() as VertexId {
            for t in 0..g.n() as VertexId {
                let want = truth.within(s, t, k);
                let results = [
                    q.bfs(&g, s, t, k),
                    q.bibfs(&g, s, t, k),
                    q.hn(&g, &hubs, &net, s, t, k),
                    q.hl(&g, &idx, s, t).unwrap(),
                ];
                for r in &results {
                    prop_assert_eq!(r.distance, want, "{} on ({},{})", r.stats.engine, s, t);
                    check_result(&g, r, s, t)?;
                }
            }
        }
    }

    #[test]
    fn estimate_bounds_and_case_exactness(seed in 0u64..1000, ba in any::<bool>(), directed in any::<bool>(), k in 2u32..7) {
        let g = random_graph(60, ba, directed, seed);
        let hubs = select_hubs(&g, 4);
        let idx = build(&g, &hubs, k).unwrap();
        let truth = AllPairs::new(&g);
        let mut q = Searcher::new(g.n());
        for s in 0..60 {
            for t in 0..60 {
                if s == t {
                    continue;
                }
                let est = estimate(&idx, s, t);
                let full = estimate_full_join(&idx, s, t);
                prop_assert_eq!(est.value, full.value);
                prop_assert!(est.join_ops <= full.join_ops);
                let d = truth.get(s, t);
                if let Some(v) = est.value {
                    prop_assert!(v >= d);
                    let (x, y) = est.argpair.unwrap();
                    let p = reconstruct_estimated_path(&idx, &g, s, x, y, t).unwrap();
                    prop_assert!(validate_path(&g, &p));
                    prop_assert_eq!(p.len() as u32, v);
                }
                // no worse than routing through any single hub
                let landmark = hubs.ids().iter()
                    .map(|&h| truth.get(s, h).saturating_add(truth.get(h, t)))
                    .filter(|&l| l <= k)
                    .min();
                if let Some(l) = landmark {
                    prop_assert!(est.value.is_some_and(|v| v <= l));
                }
                if d > k {
                    continue;
                }
                if truth.through_hub(hubs.ids(), s, t) {
                    prop_assert_eq!(est.value, Some(d), "({},{})", s, t);
                } else if !hubs.contains(s) && !hubs.contains(t) {
                    let r = q.hp_bbfs(&g, &hubs, s, t, k + 1);
                    prop_assert_eq!(r.distance, Some(d), "({},{})", s, t);
                }
            }
        }
    }
}

#[test]
fn bibfs_matches_bfs_on_er_and_usually_visits_less() {
    let g = Graph::from_edges(500, &gen_edges(SynthKind::Er, 500, 10.0, 4).unwrap(), false);
    let w = hubpath::workload::Workload::generate(&g, &hubpath::HubSet::empty(500), 6, 200, 11, Default::default()).unwrap();
    let mut q = Searcher::new(500);
    let mut fewer = 0;
    for &(s, t) in &w.pairs {
        let a = q.bfs(&g, s, t, 6);
        let b = q.bibfs(&g, s, t, 6);
        assert_eq!(a.distance, b.distance);
        if b.stats.visited <= a.stats.visited {
            fewer += 1;
        }
    }
    assert!(fewer * 10 >= 9 * w.pairs.len(), "bibfs visited no more than bfs on {fewer} of {}", w.pairs.len());
}

#[test]
fn hn_matches_bfs_on_er_with_five_percent_hubs() {
    let g = Graph::from_edges(500, &gen_edges(SynthKind::Er, 500, 10.0, 5).unwrap(), false);
    let hubs = select_hubs(&g, 25);
    let net = discover(&g, &hubs, 6);
    let w = hubpath::workload::Workload::generate(&g, &hubs, 6, 200, 12, Default::default()).unwrap();
    let mut q = Searcher::new(500);
    for &(s, t) in &w.pairs {
        assert_eq!(q.hn(&g, &hubs, &net, s, t, 6).distance, q.bfs(&g, s, t, 6).distance, "({s},{t})");
    }
}

#[test]
fn hn_without_hubs_matches_bibfs() {
    let g = Graph::from_edges(500, &gen_edges(SynthKind::Er, 500, 10.0, 6).unwrap(), false);
    let hubs = hubpath::HubSet::empty(500);
    let net = discover(&g, &hubs, 6);
    let w = hubpath::workload::Workload::generate(&g, &hubs, 6, 200, 13, Default::default()).unwrap();
    let mut q = Searcher::new(500);
    for &(s, t) in &w.pairs {
        assert_eq!(q.hn(&g, &hubs, &net, s, t, 6).distance, q.bibfs(&g, s, t, 6).distance);
    }
}

#[test]
fn hp_bbfs_equals_masked_bfs_on_ba() {
    let g = Graph::from_edges(2000, &gen_edges(SynthKind::Ba, 2000, 3.0, 1).unwrap(), false);
    let hubs = select_hubs(&g, 20);
    let filter = hubpath::workload::PairFilter { min_dist: None, non_hub_only: true };
    let w = hubpath::workload::Workload::generate(&g, &hubs, 6, 500, 14, filter).unwrap();
    let mut q = Searcher::new(2000);
    q.set_trace(true);
    for &(s, t) in &w.pairs {
        for bound in [3, 5, 7] {
            let r = q.hp_bbfs(&g, &hubs, s, t, bound);
            assert!(q.trace().iter().all(|&v| !hubs.contains(v)));
            let want = bounded_bfs_within(&g, s, bound - 1, false, |v| !hubs.contains(v)).get(&t).copied();
            assert_eq!(r.distance, want, "({s},{t}) bound {bound}");
        }
    }
}
