//! Step one of the labeling query: the best `s -> x -> y -> t` route through
//! core hubs and the hub matrix, plus path recovery from ports.

use super::{Engine, QueryResult, SearchStats, Searcher};
use crate::graph::{Graph, Path, VertexId};
use crate::index::{Hub2Index, IndexError, LabelEntry, LabelTable, INF, MAX_K};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Estimate {
    pub value: Option<u32>,
    /// Hub ids `(x, y)` attaining `value`.
    pub argpair: Option<(VertexId, VertexId)>,
    pub join_ops: u64,
}

/// Labels of `v` split by distance: `levels[p]` holds the entries at `p`.
/// A hub gets only its implicit self entry at level 0.
fn levels<'a>(idx: &Hub2Index, table: &'a LabelTable, v: VertexId, k: u32, own: &'a [LabelEntry; 1]) -> Vec<&'a [LabelEntry]> {
    let mut out: Vec<&[LabelEntry]> = vec![&[]; k as usize + 1];
    if idx.hubs().contains(v) {
        out[0] = own;
        return out;
    }
    let mut rest = table.labels(v);
    while let Some(first) = rest.first() {
        let d = first.dist;
        let end = rest.partition_point(|e| e.dist == d);
        if u32::from(d) <= k {
            out[d as usize] = &rest[..end];
        }
        rest = &rest[end..];
    }
    out
}

fn self_entry(idx: &Hub2Index, v: VertexId) -> [LabelEntry; 1] {
    [LabelEntry { hub_rank: idx.hubs().rank(v).unwrap_or(0), dist: 0, port: 0 }]
}

/// Levelwise join at the index's own bound.
pub fn estimate(idx: &Hub2Index, s: VertexId, t: VertexId) -> Estimate {
    estimate_within(idx, s, t, idx.k())
}

/// Levelwise join: classes `(p, q)` in nondecreasing `p + q`, `p` ascending
/// within a sum, stopping once the best candidate beats the next class sum.
///
/// # Panics
/// If `k` exceeds the index bound.
pub fn estimate_within(idx: &Hub2Index, s: VertexId, t: VertexId, k: u32) -> Estimate {
    assert!(k <= idx.k(), "index covers distances up to {}", idx.k());
    let (own_s, own_t) = (self_entry(idx, s), self_entry(idx, t));
    let src = levels(idx, idx.out_labels(), s, k, &own_s);
    let dst = levels(idx, idx.in_labels(), t, k, &own_t);
    let m = idx.matrix();
    let mut est = Estimate { value: None, argpair: None, join_ops: 0 };
    let mut best = k + 1;
    for sum in 0..=k {
        if best < sum {
            break;
        }
        for p in 0..=sum {
            let q = sum - p;
            let (ls, lt) = (src[p as usize], dst[q as usize]);
            if ls.is_empty() || lt.is_empty() {
                continue;
            }
            for a in ls {
                for b in lt {
                    est.join_ops += 1;
                    let mid = m.dist(a.hub_rank, b.hub_rank);
                    if mid == INF {
                        continue;
                    }
                    let total = sum + u32::from(mid);
                    if total < best {
                        best = total;
                        est.argpair = Some((idx.hubs().id(a.hub_rank), idx.hubs().id(b.hub_rank)));
                    }
                }
            }
        }
    }
    est.value = (best <= k).then_some(best);
    if est.value.is_none() {
        est.argpair = None;
    }
    est
}

/// Exhaustive join over every label pair.
pub fn estimate_full_join(idx: &Hub2Index, s: VertexId, t: VertexId) -> Estimate {
    let k = idx.k();
    let (own_s, own_t) = (self_entry(idx, s), self_entry(idx, t));
    let side = |table: &LabelTable, v: VertexId, own: &[LabelEntry; 1]| -> Vec<LabelEntry> {
        if idx.hubs().contains(v) {
            own.to_vec()
        } else {
            table.labels(v).to_vec()
        }
    };
    let src = side(idx.out_labels(), s, &own_s);
    let dst = side(idx.in_labels(), t, &own_t);
    let m = idx.matrix();
    let mut est = Estimate { value: None, argpair: None, join_ops: 0 };
    let mut best = k + 1;
    for a in &src {
        for b in &dst {
            est.join_ops += 1;
            let mid = m.dist(a.hub_rank, b.hub_rank);
            if mid == INF {
                continue;
            }
            let total = u32::from(a.dist) + u32::from(mid) + u32::from(b.dist);
            if total < best {
                best = total;
                est.argpair = Some((idx.hubs().id(a.hub_rank), idx.hubs().id(b.hub_rank)));
            }
        }
    }
    est.value = (best <= k).then_some(best);
    est
}

fn walk_ports(
    idx: &Hub2Index,
    g: &Graph,
    table: &LabelTable,
    reverse: bool,
    from: VertexId,
    hub: VertexId,
    out: &mut Vec<VertexId>,
) -> Result<(), IndexError> {
    out.push(from);
    if from == hub {
        return Ok(());
    }
    let rank = idx.hubs().rank(hub).ok_or_else(|| IndexError::Integrity(format!("{hub} is not a hub")))?;
    let start = table
        .labels(from)
        .iter()
        .find(|e| e.hub_rank == rank)
        .ok_or_else(|| IndexError::Integrity(format!("vertex {from} has no label for hub {hub}")))?;
    let mut cur = from;
    for d in (1..=start.dist).rev() {
        let e = table
            .find(cur, rank, d)
            .ok_or_else(|| IndexError::Integrity(format!("vertex {cur} lacks label ({hub}, {d})")))?;
        cur = *g
            .neighbors(cur, reverse)
            .get(e.port as usize)
            .ok_or_else(|| IndexError::Integrity(format!("port {} out of range at vertex {cur}", e.port)))?;
        out.push(cur);
    }
    if cur != hub {
        return Err(IndexError::Integrity(format!("ports from {from} end at {cur}, not hub {hub}")));
    }
    Ok(())
}

/// Joins the port walk `s -> x`, the matrix witness `x -> y` and the
/// reversed port walk `t -> y`.
pub fn reconstruct_estimated_path(
    idx: &Hub2Index,
    g: &Graph,
    s: VertexId,
    x: VertexId,
    y: VertexId,
    t: VertexId,
) -> Result<Path, IndexError> {
    let hubs = idx.hubs();
    let (Some(rx), Some(ry)) = (hubs.rank(x), hubs.rank(y)) else {
        return Err(IndexError::Integrity(format!("({x}, {y}) is not a hub pair")));
    };
    let mut path = Vec::new();
    walk_ports(idx, g, idx.out_labels(), false, s, x, &mut path)?;
    path.pop();
    idx.matrix().expand_path(hubs, rx, ry, &mut path)?;
    let mut tail = Vec::new();
    walk_ports(idx, g, idx.in_labels(), true, t, y, &mut tail)?;
    tail.pop();
    path.extend(tail.into_iter().rev());
    Ok(Path(path))
}

impl Searcher {
    /// Two-step labeling query at the index bound.
    pub fn hl(&mut self, g: &Graph, idx: &Hub2Index, s: VertexId, t: VertexId) -> Result<QueryResult, IndexError> {
        self.hl_within(g, idx, s, t, idx.k())
    }

    /// Label estimate, then a bidirectional search that skips every hub and
    /// only looks for something strictly shorter.
    pub fn hl_within(
        &mut self,
        g: &Graph,
        idx: &Hub2Index,
        s: VertexId,
        t: VertexId,
        k: u32,
    ) -> Result<QueryResult, IndexError> {
        if k > idx.k() || k > MAX_K {
            return Err(IndexError::BadK(k));
        }
        let mut stats = SearchStats { engine: Engine::Hub2, visited: 0, enqueued: 0, join_ops: 0 };
        if let Some(t) = &mut self.trace {
            t.clear();
        }
        if s == t {
            return Ok(QueryResult::found(Path::single(s), stats));
        }
        let est = estimate_within(idx, s, t, k);
        stats.join_ops = est.join_ops;
        let hubs = idx.hubs();
        if !hubs.contains(s) && !hubs.contains(t) {
            let bound = est.value.unwrap_or(k + 1);
            let r = self.hp_bbfs(g, hubs, s, t, bound);
            stats.visited = r.stats.visited;
            stats.enqueued = r.stats.enqueued;
            if let Some(path) = r.path {
                return Ok(QueryResult::found(path, stats));
            }
        }
        match est.argpair {
            Some((x, y)) => Ok(QueryResult::found(reconstruct_estimated_path(idx, g, s, x, y, t)?, stats)),
            None => Ok(QueryResult::absent(stats)),
        }
    }
}

pub fn hl_query(g: &Graph, idx: &Hub2Index, s: VertexId, t: VertexId) -> Result<QueryResult, IndexError> {
    Searcher::new(g.n()).hl(g, idx, s, t)
}
