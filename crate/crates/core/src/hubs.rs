//! Hub selection by degree.

use crate::graph::{Graph, VertexId};

const NOT_HUB: u32 = u32::MAX;

/// The hub set `H`: ascending ids plus an inverse rank table that doubles
/// as the membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubSet {
    ids: Vec<VertexId>,
    rank: Vec<u32>,
}

impl HubSet {
    /// Uses the given vertices as hubs (sorted and deduplicated).
    ///
    /// # Panics
    /// If any id is `>= n`.
    pub fn from_ids(n: usize, ids: impl IntoIterator<Item = VertexId>) -> Self {
        let mut ids: Vec<VertexId> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        let mut rank = vec![NOT_HUB; n];
        for (r, &v) in ids.iter().enumerate() {
            assert!((v as usize) < n, "hub {v} out of range for n={n}");
            rank[v as usize] = r as u32;
        }
        HubSet { ids, rank }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_ids(n, [])
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.rank[v as usize] != NOT_HUB
    }

    #[inline]
    pub fn rank(&self, v: VertexId) -> Option<u32> {
        let r = self.rank[v as usize];
        (r != NOT_HUB).then_some(r)
    }

    #[inline]
    pub fn id(&self, rank: u32) -> VertexId {
        self.ids[rank as usize]
    }
}

/// Picks the `beta` vertices of largest total degree, ties toward smaller id.
/// `beta` larger than `n` selects every vertex.
pub fn select_hubs(g: &Graph, beta: usize) -> HubSet {
    let mut order: Vec<VertexId> = (0..g.n() as VertexId).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order.truncate(beta.max(1).min(g.n()));
    HubSet::from_ids(g.n(), order)
}

/// Default hub count: 0.5% of `n`, clamped to `[1, n]`.
pub fn default_hub_count(n: usize) -> usize {
    (n / 200).clamp(1, n.max(1))
}
