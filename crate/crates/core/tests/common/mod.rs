#![allow(dead_code)]

use hubpath::graph::bounded_bfs;
use hubpath::synth::{gen_edges, SynthKind};
use hubpath::{Graph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FAR: u32 = u32::MAX;

/// Exact all-pairs distances by repeated BFS, `FAR` when unreachable.
pub struct AllPairs {
    n: usize,
    d: Vec<u32>,
}

impl AllPairs {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut d = vec![FAR; n * n];
        for s in 0..n as VertexId {
            for (v, l) in bounded_bfs(g, s, u32::MAX, false) {
                d[s as usize * n + v as usize] = l;
            }
        }
        AllPairs { n, d }
    }

    pub fn get(&self, s: VertexId, t: VertexId) -> u32 {
        self.d[s as usize * self.n + t as usize]
    }

    pub fn within(&self, s: VertexId, t: VertexId, k: u32) -> Option<u32> {
        let d = self.get(s, t);
        (d <= k).then_some(d)
    }

    /// Whether some shortest `s -> t` path passes through a hub (endpoints
    /// included).
    pub fn through_hub(&self, hubs: &[VertexId], s: VertexId, t: VertexId) -> bool {
        let d = self.get(s, t);
        d != FAR
            && hubs.iter().any(|&h| {
                let (a, b) = (self.get(s, h), self.get(h, t));
                a != FAR && b != FAR && a + b == d
            })
    }
}

pub fn from_pairs(n: usize, pairs: &[(u32, u32)], directed: bool) -> Graph {
    let edges: Vec<_> = pairs.iter().map(|&(a, b)| (a % n as u32, b % n as u32)).collect();
    Graph::from_edges(n, &edges, directed)
}

/// A random ER or BA graph; directed variants orient each generated edge
/// at random and keep a fifth of them in both directions.
pub fn random_graph(n: usize, ba: bool, directed: bool, seed: u64) -> Graph {
    let edges = if ba {
        gen_edges(SynthKind::Ba, n, 2.0, seed).unwrap()
    } else {
        gen_edges(SynthKind::Er, n, 4.0, seed).unwrap()
    };
    if !directed {
        return Graph::from_edges(n, &edges, false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut arcs = Vec::with_capacity(edges.len() * 2);
    for (a, b) in edges {
        match rng.gen_range(0..5) {
            0 => arcs.extend([(a, b), (b, a)]),
            1 | 2 => arcs.push((a, b)),
            _ => arcs.push((b, a)),
        }
    }
    Graph::from_edges(n, &arcs, true)
}
