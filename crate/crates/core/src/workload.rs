//! Seeded query workloads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::hubs::HubSet;
use crate::query::Searcher;

/// Pair filters; the default accepts every pair with `s != t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairFilter {
    /// Keep pairs with `min_dist <= d(s, t) <= k`.
    pub min_dist: Option<u32>,
    /// Reject pairs with a hub endpoint.
    pub non_hub_only: bool,
}

#[derive(Debug, Error)]
#[error("found only {found} of {wanted} pairs matching the filter after {attempts} draws")]
pub struct WorkloadError {
    pub found: usize,
    pub wanted: usize,
    pub attempts: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workload {
    pub seed: u64,
    pub filter: PairFilter,
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl Workload {
    /// Draws `count` pairs uniformly from `V x V` minus the diagonal,
    /// rejecting those the filter refuses. Distances are measured with a
    /// `k`-bounded BFS.
    pub fn generate(
        g: &Graph,
        hubs: &HubSet,
        k: u32,
        count: usize,
        seed: u64,
        filter: PairFilter,
    ) -> Result<Workload, WorkloadError> {
        let n = g.n() as VertexId;
        let mut pairs = Vec::with_capacity(count);
        if n < 2 {
            return if count == 0 { Ok(Workload { seed, filter, pairs }) } else { Err(WorkloadError { found: 0, wanted: count, attempts: 0 }) };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut search = filter.min_dist.map(|_| Searcher::new(g.n()));
        let limit = 1000 * count as u64 + 10_000;
        let mut attempts = 0;
        while pairs.len() < count {
            if attempts == limit {
                return Err(WorkloadError { found: pairs.len(), wanted: count, attempts });
            }
            attempts += 1;
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if s == t || (filter.non_hub_only && (hubs.contains(s) || hubs.contains(t))) {
                continue;
            }
            if let (Some(min), Some(search)) = (filter.min_dist, search.as_mut()) {
                if !search.bfs(g, s, t, k).distance.is_some_and(|d| d >= min) {
                    continue;
                }
            }
            pairs.push((s, t));
        }
        Ok(Workload { seed, filter, pairs })
    }
}
