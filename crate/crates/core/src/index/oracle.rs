//! Literal core-hub definition over exact distances, for testing labels.

use std::collections::{BTreeSet, HashMap};

use crate::graph::{bounded_bfs, Graph, VertexId};
use crate::hubs::HubSet;

/// Which label table a query concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelSide {
    /// Hubs reachable from `v` (`v -> h`).
    Out,
    /// Hubs that reach `v` (`h -> v`).
    In,
}

/// Precomputed exact hub-to-hub distances; answers core-hub sets for any
/// vertex with one more unbounded BFS.
pub struct CoreHubOracle<'g> {
    g: &'g Graph,
    hubs: &'g HubSet,
    k: u32,
    /// `between[x][h]` = d(hub x, vertex h), hubs only.
    between: Vec<HashMap<VertexId, u32>>,
}

impl<'g> CoreHubOracle<'g> {
    pub fn new(g: &'g Graph, hubs: &'g HubSet, k: u32) -> Self {
        let between = hubs.ids().iter().map(|&x| bounded_bfs(g, x, u32::MAX, false)).collect();
        CoreHubOracle { g, hubs, k, between }
    }

    fn hub_dist(&self, from: VertexId, to: VertexId) -> Option<u32> {
        let r = self.hubs.rank(from).expect("hub");
        self.between[r as usize].get(&to).copied()
    }

    /// `(hub, dist)` pairs of `v`'s core hubs on `side`; a hub owns just
    /// `(v, 0)`.
    pub fn core_hubs(&self, v: VertexId, side: LabelSide) -> BTreeSet<(VertexId, u32)> {
        if self.hubs.contains(v) {
            return BTreeSet::from([(v, 0)]);
        }
        let reverse = side == LabelSide::In;
        let dv = bounded_bfs(self.g, v, u32::MAX, reverse);
        let mut out = BTreeSet::new();
        for &h in self.hubs.ids() {
            let Some(&d) = dv.get(&h) else { continue };
            if d > self.k {
                continue;
            }
            let blocked = self.hubs.ids().iter().any(|&w| {
                if w == h {
                    return false;
                }
                let Some(&dw) = dv.get(&w) else { return false };
                // Out: d(v,w) + d(w,h); In: d(h,w) + d(w,v).
                let mid = match side {
                    LabelSide::Out => self.hub_dist(w, h),
                    LabelSide::In => self.hub_dist(h, w),
                };
                mid.is_some_and(|m| dw + m == d)
            });
            if !blocked {
                out.insert((h, d));
            }
        }
        out
    }
}

pub fn core_hubs_oracle(g: &Graph, hubs: &HubSet, k: u32, v: VertexId, side: LabelSide) -> BTreeSet<(VertexId, u32)> {
    CoreHubOracle::new(g, hubs, k).core_hubs(v, side)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: u32) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|v| (v, v + 1)).collect();
        Graph::from_edges(n as usize, &edges, false)
    }

    #[test]
    fn chain_endpoint_sees_only_nearest_hub() {
        let g = chain(4);
        let hubs = HubSet::from_ids(4, [1, 2]);
        assert_eq!(core_hubs_oracle(&g, &hubs, 4, 0, LabelSide::Out), BTreeSet::from([(1, 1)]));
        assert_eq!(core_hubs_oracle(&g, &hubs, 4, 3, LabelSide::In), BTreeSet::from([(2, 1)]));
    }

    #[test]
    fn hub_has_self_entry() {
        let g = chain(4);
        let hubs = HubSet::from_ids(4, [1, 2]);
        assert_eq!(core_hubs_oracle(&g, &hubs, 4, 2, LabelSide::Out), BTreeSet::from([(2, 0)]));
    }

    #[test]
    fn far_vertex_has_no_core_hubs() {
        let g = chain(8);
        let hubs = HubSet::from_ids(8, [0]);
        assert!(core_hubs_oracle(&g, &hubs, 3, 6, LabelSide::Out).is_empty());
        assert_eq!(core_hubs_oracle(&g, &hubs, 3, 3, LabelSide::Out), BTreeSet::from([(0, 3)]));
    }

    #[test]
    fn directed_sides_differ() {
        // 0 -> 1 -> 2, hub 1
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)], true);
        let hubs = HubSet::from_ids(3, [1]);
        let o = CoreHubOracle::new(&g, &hubs, 4);
        assert_eq!(o.core_hubs(0, LabelSide::Out), BTreeSet::from([(1, 1)]));
        assert!(o.core_hubs(0, LabelSide::In).is_empty());
        assert_eq!(o.core_hubs(2, LabelSide::In), BTreeSet::from([(1, 1)]));
        assert!(o.core_hubs(2, LabelSide::Out).is_empty());
    }
}
