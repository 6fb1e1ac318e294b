//! Distance-preserving hub-network discovery.
//!
//! One bounded BFS per hub tracks two per-vertex values: `b` (no other hub
//! lies strictly inside any shortest path from the source) and `f` (the
//! largest number of hub-network members on some shortest path). Each hub
//! reached with `b` still set forms a basic pair; the parent chain that
//! maximises `f` is copied into `H*`, so the fewest new vertices are added.

use crate::graph::{bounded_bfs, bounded_bfs_within, Graph, VertexId};
use crate::hubs::HubSet;

const NONE: u32 = u32::MAX;

/// A hub pair with no other hub on any of its shortest paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasicPair {
    pub source: VertexId,
    pub target: VertexId,
    pub distance: u32,
    /// Vertices newly inserted into `H*` to realise this pair's path.
    pub added: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubNetwork {
    member: Vec<bool>,
    ids: Vec<VertexId>,
    k: u32,
    directed: bool,
    basic_pairs: Vec<BasicPair>,
    added_per_hub: Vec<u32>,
}

impl HubNetwork {
    fn seeded(g: &Graph, hubs: &HubSet, k: u32) -> Self {
        let mut member = vec![false; g.n()];
        for &h in hubs.ids() {
            member[h as usize] = true;
        }
        HubNetwork {
            member,
            ids: Vec::new(),
            k,
            directed: g.is_directed(),
            basic_pairs: Vec::new(),
            added_per_hub: vec![0; hubs.len()],
        }
    }

    /// A network with a hand-picked vertex set and no discovery record.
    pub fn with_members(g: &Graph, k: u32, members: impl IntoIterator<Item = VertexId>) -> Self {
        let mut net = HubNetwork::seeded(g, &HubSet::empty(g.n()), k);
        for v in members {
            net.member[v as usize] = true;
        }
        net.finish();
        net
    }

    fn finish(&mut self) {
        self.ids = (0..self.member.len() as VertexId).filter(|&v| self.member[v as usize]).collect();
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.member[v as usize]
    }

    /// Ascending ids of `H*`.
    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Basic pairs in discovery order. Undirected graphs record each pair
    /// once from each endpoint.
    pub fn basic_pairs(&self) -> &[BasicPair] {
        &self.basic_pairs
    }

    /// New vertices contributed by each hub's traversal, indexed by hub rank.
    pub fn added_per_hub(&self) -> &[u32] {
        &self.added_per_hub
    }

    /// Basic pairs with `(u, v)` and `(v, u)` merged on undirected graphs.
    pub fn unique_basic_pairs(&self) -> Vec<BasicPair> {
        self.basic_pairs
            .iter()
            .filter(|p| self.directed || p.source < p.target)
            .copied()
            .collect()
    }

    /// `sum over unique basic pairs of (d - 1)`, plus `|H|`.
    pub fn size_bound(&self, hubs: &HubSet) -> u64 {
        self.unique_basic_pairs()
            .iter()
            .map(|p| u64::from(p.distance) - 1)
            .sum::<u64>()
            + hubs.len() as u64
    }
}

/// Per-traversal state, reused across hubs by bumping the epoch.
pub struct TraversalScratch {
    stamp: Vec<u32>,
    epoch: u32,
    level: Vec<u32>,
    unblocked: Vec<bool>,
    score: Vec<u32>,
    parent: Vec<VertexId>,
    queue: Vec<VertexId>,
}

impl TraversalScratch {
    pub fn new(n: usize) -> Self {
        TraversalScratch {
            stamp: vec![0; n],
            epoch: 0,
            level: vec![0; n],
            unblocked: vec![false; n],
            score: vec![0; n],
            parent: vec![NONE; n],
            queue: Vec::new(),
        }
    }

    fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.queue.clear();
    }

    #[inline]
    fn seen(&self, v: VertexId) -> bool {
        self.stamp[v as usize] == self.epoch
    }

    /// Level of `v` in the last traversal, if it was reached.
    pub fn level(&self, v: VertexId) -> Option<u32> {
        self.seen(v).then(|| self.level[v as usize])
    }

    /// Final `b` flag of `v` in the last traversal.
    pub fn unblocked(&self, v: VertexId) -> bool {
        self.seen(v) && self.unblocked[v as usize]
    }

    pub fn score(&self, v: VertexId) -> Option<u32> {
        self.seen(v).then(|| self.score[v as usize])
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        let p = self.parent[v as usize];
        (self.seen(v) && p != NONE).then_some(p)
    }
}

/// Outcome of one hub's traversal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Extraction {
    pub pairs: Vec<BasicPair>,
    pub added: u32,
}

/// Traverses `k` levels out of `source`, recording each basic pair and
/// inserting the best-scored shortest path into `net`.
pub fn bfs_extract(
    g: &Graph,
    hubs: &HubSet,
    source: VertexId,
    k: u32,
    net: &mut HubNetwork,
    scratch: &mut TraversalScratch,
) -> Extraction {
    debug_assert!(hubs.contains(source));
    let s = scratch;
    s.reset();
    let epoch = s.epoch;
    s.stamp[source as usize] = epoch;
    s.level[source as usize] = 0;
    s.unblocked[source as usize] = true;
    s.score[source as usize] = 0;
    s.parent[source as usize] = NONE;
    s.queue.push(source);

    let mut out = Extraction::default();
    let mut head = 0;
    while head < s.queue.len() {
        let u = s.queue[head];
        head += 1;
        let ui = u as usize;
        let lu = s.level[ui];

        if u != source && hubs.contains(u) {
            if s.unblocked[ui] {
                let mut added = 0;
                let mut x = s.parent[ui];
                while x != source {
                    if !net.member[x as usize] {
                        net.member[x as usize] = true;
                        added += 1;
                    }
                    x = s.parent[x as usize];
                }
                out.added += added;
                out.pairs.push(BasicPair { source, target: u, distance: lu, added });
            }
            s.unblocked[ui] = false;
        }
        if lu >= k {
            continue;
        }
        // Membership is read when u is expanded; later growth of H* within
        // this traversal does not revise scores already handed down.
        if s.unblocked[ui] && net.member[ui] {
            s.score[ui] += 1;
        }
        let (ub, uf) = (s.unblocked[ui], s.score[ui]);
        for &v in g.out_neighbors(u) {
            let vi = v as usize;
            if s.stamp[vi] != epoch {
                s.stamp[vi] = epoch;
                s.level[vi] = lu + 1;
                s.unblocked[vi] = ub;
                s.score[vi] = uf;
                s.parent[vi] = u;
                s.queue.push(v);
            } else if s.level[vi] == lu + 1 {
                if !ub {
                    s.unblocked[vi] = false;
                } else if uf > s.score[vi] || (uf == s.score[vi] && u < s.parent[vi]) {
                    s.score[vi] = uf;
                    s.parent[vi] = u;
                }
            }
        }
    }
    out
}

/// Greedy hub-network discovery over all hubs in ascending id order.
pub fn discover(g: &Graph, hubs: &HubSet, k: u32) -> HubNetwork {
    let mut net = HubNetwork::seeded(g, hubs, k);
    if hubs.len() > 1 {
        let mut scratch = TraversalScratch::new(g.n());
        for (rank, &h) in hubs.ids().iter().enumerate() {
            let ex = bfs_extract(g, hubs, h, k, &mut net, &mut scratch);
            net.added_per_hub[rank] = ex.added;
            net.basic_pairs.extend(ex.pairs);
        }
    }
    net.finish();
    net
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationFailure {
    pub from: VertexId,
    pub to: VertexId,
    pub expected: u32,
    /// Distance inside `G[H*]`, `None` when beyond `k` or unreachable.
    pub found: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreservationReport {
    pub checked: usize,
    pub failures: Vec<PreservationFailure>,
}

impl PreservationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares every ordered hub pair within `k` against its distance in `G[H*]`.
pub fn verify_distance_preserving(
    g: &Graph,
    hubs: &HubSet,
    net: &HubNetwork,
    k: u32,
) -> PreservationReport {
    let mut report = PreservationReport::default();
    for &u in hubs.ids() {
        let full = bounded_bfs(g, u, k, false);
        let sub = bounded_bfs_within(g, u, k, false, |v| net.contains(v));
        for &v in hubs.ids() {
            if v == u {
                continue;
            }
            if let Some(&d) = full.get(&v) {
                report.checked += 1;
                let found = sub.get(&v).copied();
                if found != Some(d) {
                    report.failures.push(PreservationFailure { from: u, to: v, expected: d, found });
                }
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NetworkStats {
    pub size_hstar: usize,
    pub avg_hub_degree_original: f64,
    pub avg_hub_degree_network: f64,
}

impl NetworkStats {
    /// Network over original average hub degree; 0 when there are no hubs.
    pub fn degree_ratio(&self) -> f64 {
        if self.avg_hub_degree_original == 0.0 {
            0.0
        } else {
            self.avg_hub_degree_network / self.avg_hub_degree_original
        }
    }
}

pub fn network_stats(g: &Graph, hubs: &HubSet, net: &HubNetwork) -> NetworkStats {
    if hubs.is_empty() {
        return NetworkStats { size_hstar: net.len(), avg_hub_degree_original: 0.0, avg_hub_degree_network: 0.0 };
    }
    let mut orig = 0usize;
    let mut inside = 0usize;
    for &h in hubs.ids() {
        orig += g.degree(h);
        inside += g.out_neighbors(h).iter().filter(|&&v| net.contains(v)).count();
        if g.is_directed() {
            inside += g.in_neighbors(h).iter().filter(|&&v| net.contains(v)).count();
        }
    }
    let count = hubs.len() as f64;
    NetworkStats {
        size_hstar: net.len(),
        avg_hub_degree_original: orig as f64 / count,
        avg_hub_degree_network: inside as f64 / count,
    }
}
