//! k-degree shortest-path engines: plain BFS, bidirectional BFS, the
//! hub-network search, and the two-step labeling query.

mod estimate;

use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, Path, VertexId};
use crate::hubnet::HubNetwork;
use crate::hubs::HubSet;

pub use estimate::{estimate, estimate_full_join, estimate_within, hl_query, reconstruct_estimated_path, Estimate};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    Bfs,
    Bibfs,
    /// Bidirectional search with hubs confined to the hub-network.
    HubNetwork,
    /// Label estimate followed by hub-pruned bidirectional search.
    Hub2,
}

impl Engine {
    pub const ALL: [Engine; 4] = [Engine::Bfs, Engine::Bibfs, Engine::HubNetwork, Engine::Hub2];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Bfs => "bfs",
            Engine::Bibfs => "bibfs",
            Engine::HubNetwork => "hn",
            Engine::Hub2 => "hl",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine {s:?} (expected bfs, bibfs, hn or hl)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub engine: Engine,
    /// Vertices dequeued and expanded, both directions.
    pub visited: u64,
    pub enqueued: u64,
    /// Label pairs compared during estimation.
    pub join_ops: u64,
}

impl SearchStats {
    fn new(engine: Engine) -> Self {
        SearchStats { engine, visited: 0, enqueued: 0, join_ops: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryResult {
    /// `None` when `d(s, t) > k` or `t` is unreachable.
    pub distance: Option<u32>,
    pub path: Option<Path>,
    pub stats: SearchStats,
}

impl QueryResult {
    fn absent(stats: SearchStats) -> Self {
        QueryResult { distance: None, path: None, stats }
    }

    fn found(path: Path, stats: SearchStats) -> Self {
        QueryResult { distance: Some(path.len() as u32), path: Some(path), stats }
    }
}

/// Vertices a search must never enqueue.
pub trait VertexMask {
    fn masked(&self, v: VertexId) -> bool;
}

pub struct NoMask;

impl VertexMask for NoMask {
    #[inline]
    fn masked(&self, _: VertexId) -> bool {
        false
    }
}

impl VertexMask for HubSet {
    #[inline]
    fn masked(&self, v: VertexId) -> bool {
        self.contains(v)
    }
}

struct Side {
    stamp: Vec<u32>,
    level: Vec<u32>,
    parent: Vec<VertexId>,
    frontier: Vec<VertexId>,
    next: Vec<VertexId>,
    /// Smallest level at which this side has seen a hub.
    min_hub_level: u32,
}

impl Side {
    fn new(n: usize) -> Self {
        Side {
            stamp: vec![0; n],
            level: vec![0; n],
            parent: vec![NONE; n],
            frontier: Vec::new(),
            next: Vec::new(),
            min_hub_level: NONE,
        }
    }

    #[inline]
    fn seen(&self, v: VertexId, epoch: u32) -> bool {
        self.stamp[v as usize] == epoch
    }

    fn start(&mut self, v: VertexId, epoch: u32) {
        self.frontier.clear();
        self.next.clear();
        self.min_hub_level = NONE;
        self.mark(v, 0, NONE, epoch);
        self.frontier.push(v);
    }

    #[inline]
    fn mark(&mut self, v: VertexId, level: u32, parent: VertexId, epoch: u32) {
        let vi = v as usize;
        self.stamp[vi] = epoch;
        self.level[vi] = level;
        self.parent[vi] = parent;
    }

    /// Parent chain from `v` back to this side's root, `v` first.
    fn chain(&self, mut v: VertexId, out: &mut Vec<VertexId>) {
        loop {
            out.push(v);
            let p = self.parent[v as usize];
            if p == NONE {
                break;
            }
            v = p;
        }
    }
}

/// Reusable per-thread query state. Arrays are stamped with an epoch so a
/// query costs only what it touches.
pub struct Searcher {
    fwd: Side,
    bwd: Side,
    epoch: u32,
    trace: Option<Vec<VertexId>>,
}

impl Searcher {
    pub fn new(n: usize) -> Self {
        Searcher { fwd: Side::new(n), bwd: Side::new(n), epoch: 0, trace: None }
    }

    /// Records every vertex expanded by [`Searcher::hp_bbfs`] until disabled.
    pub fn set_trace(&mut self, on: bool) {
        self.trace = on.then(Vec::new);
    }

    /// Vertices expanded by the most recent hub-pruned search.
    pub fn trace(&self) -> &[VertexId] {
        self.trace.as_deref().unwrap_or(&[])
    }

    fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.fwd.stamp.fill(0);
            self.bwd.stamp.fill(0);
            self.epoch = 1;
        }
        if let Some(t) = &mut self.trace {
            t.clear();
        }
    }

    fn stitch(&self, meet: VertexId) -> Path {
        let mut p = Vec::new();
        self.fwd.chain(meet, &mut p);
        p.reverse();
        let mut back = Vec::new();
        self.bwd.chain(meet, &mut back);
        p.extend_from_slice(&back[1..]);
        Path(p)
    }

    /// Single-direction BFS from `s`, stopping as soon as `t` is discovered.
    pub fn bfs(&mut self, g: &Graph, s: VertexId, t: VertexId, k: u32) -> QueryResult {
        let mut stats = SearchStats::new(Engine::Bfs);
        stats.enqueued = 1;
        if s == t {
            return QueryResult::found(Path::single(s), stats);
        }
        self.reset();
        let epoch = self.epoch;
        let f = &mut self.fwd;
        f.start(s, epoch);
        let mut depth = 0;
        while !f.frontier.is_empty() && depth < k {
            f.next.clear();
            for i in 0..f.frontier.len() {
                let u = f.frontier[i];
                stats.visited += 1;
                for &v in g.out_neighbors(u) {
                    if f.seen(v, epoch) {
                        continue;
                    }
                    f.mark(v, depth + 1, u, epoch);
                    stats.enqueued += 1;
                    if v == t {
                        let mut p = Vec::new();
                        f.chain(t, &mut p);
                        p.reverse();
                        return QueryResult::found(Path(p), stats);
                    }
                    f.next.push(v);
                }
            }
            std::mem::swap(&mut f.frontier, &mut f.next);
            depth += 1;
        }
        QueryResult::absent(stats)
    }

    /// Bidirectional BFS, expanding the smaller frontier first.
    pub fn bibfs(&mut self, g: &Graph, s: VertexId, t: VertexId, k: u32) -> QueryResult {
        let mut r = self.bidirectional(g, &NoMask, s, t, k + 1, false);
        r.stats.engine = Engine::Bibfs;
        r
    }

    /// Bidirectional BFS that never enqueues a masked vertex and reports only
    /// distances below `bound`.
    ///
    /// # Panics
    /// If `s` or `t` is masked.
    pub fn hp_bbfs<M: VertexMask>(&mut self, g: &Graph, mask: &M, s: VertexId, t: VertexId, bound: u32) -> QueryResult {
        assert!(!mask.masked(s) && !mask.masked(t), "hub-pruned search endpoints must be unmasked");
        let mut r = self.bidirectional(g, mask, s, t, bound, true);
        r.stats.engine = Engine::Hub2;
        r
    }

    fn bidirectional<M: VertexMask>(
        &mut self,
        g: &Graph,
        mask: &M,
        s: VertexId,
        t: VertexId,
        bound: u32,
        traced: bool,
    ) -> QueryResult {
        let mut stats = SearchStats::new(Engine::Bibfs);
        if s == t {
            stats.enqueued = 1;
            return if bound > 0 { QueryResult::found(Path::single(s), stats) } else { QueryResult::absent(stats) };
        }
        self.reset();
        let epoch = self.epoch;
        self.fwd.start(s, epoch);
        self.bwd.start(t, epoch);
        stats.enqueued = 2;
        let (mut df, mut db) = (0u32, 0u32);
        let mut best = bound;
        let mut meet = NONE;
        while !self.fwd.frontier.is_empty() && !self.bwd.frontier.is_empty() && df + db + 1 < best {
            let forward = self.fwd.frontier.len() <= self.bwd.frontier.len();
            let (me, other, depth) =
                if forward { (&mut self.fwd, &self.bwd, &mut df) } else { (&mut self.bwd, &self.fwd, &mut db) };
            let trace = if traced { self.trace.as_mut() } else { None };
            expand(g, me, other, epoch, *depth, !forward, |_, _| true, mask, None, &mut stats, &mut best, &mut meet, trace);
            *depth += 1;
        }
        if meet == NONE {
            return QueryResult::absent(stats);
        }
        QueryResult::found(self.stitch(meet), stats)
    }

    /// Bidirectional search in which a hub expands only into `net`.
    ///
    /// Levels alternate strictly between the directions. Because restricted
    /// hubs can leave a side's levels short of the true distance, the search
    /// does not stop at the plain level-sum bound: it then extends each side
    /// through non-hub vertices until it reaches every hub the other side has
    /// already seen at a level that could still improve the answer.
    ///
    /// # Panics
    /// If `k` exceeds the bound `net` was discovered with.
    pub fn hn(&mut self, g: &Graph, hubs: &HubSet, net: &HubNetwork, s: VertexId, t: VertexId, k: u32) -> QueryResult {
        assert!(k <= net.k(), "hub-network preserves distances only up to k={}", net.k());
        let mut stats = SearchStats::new(Engine::HubNetwork);
        stats.enqueued = 1;
        if s == t {
            return QueryResult::found(Path::single(s), stats);
        }
        self.reset();
        let epoch = self.epoch;
        self.fwd.start(s, epoch);
        self.bwd.start(t, epoch);
        for (side, v) in [(&mut self.fwd, s), (&mut self.bwd, t)] {
            if hubs.contains(v) {
                side.min_hub_level = 0;
            }
        }
        stats.enqueued = 2;
        let allow = |u: VertexId, v: VertexId| !hubs.contains(u) || net.contains(v);
        let (mut df, mut db) = (0u32, 0u32);
        let mut best = k + 1;
        let mut meet = NONE;
        let mut forward_turn = true;

        loop {
            let (f_empty, b_empty) = (self.fwd.frontier.is_empty(), self.bwd.frontier.is_empty());
            if (f_empty && b_empty) || df + db + 1 >= best {
                break;
            }
            let forward = if f_empty {
                false
            } else if b_empty {
                true
            } else {
                forward_turn
            };
            forward_turn = !forward;
            let (me, other, depth) =
                if forward { (&mut self.fwd, &self.bwd, &mut df) } else { (&mut self.bwd, &self.fwd, &mut db) };
            expand_restricted(g, hubs, me, other, epoch, *depth, !forward, &allow, false, &mut stats, &mut best, &mut meet);
            *depth += 1;
        }

        // A shortest path whose first hub the forward side has not reached
        // yet: the backward side already holds that hub at its exact level.
        while !self.fwd.frontier.is_empty() && reach(df, self.bwd.min_hub_level) < best {
            expand_restricted(g, hubs, &mut self.fwd, &self.bwd, epoch, df, false, &allow, true, &mut stats, &mut best, &mut meet);
            df += 1;
        }
        while !self.bwd.frontier.is_empty() && reach(db, self.fwd.min_hub_level) < best {
            expand_restricted(g, hubs, &mut self.bwd, &self.fwd, epoch, db, true, &allow, true, &mut stats, &mut best, &mut meet);
            db += 1;
        }

        if meet == NONE {
            return QueryResult::absent(stats);
        }
        QueryResult::found(self.stitch(meet), stats)
    }
}

/// Shortest meeting length still possible once one side has reached
/// `depth` and the other holds a hub at `hub_level`.
#[inline]
fn reach(depth: u32, hub_level: u32) -> u32 {
    depth.saturating_add(hub_level).saturating_add(1)
}

/// Expands one full level of `me`. A neighbor `v` of `u` is followed only if
/// `follow(u, v)` holds and `v` is unmasked; meetings with `other` are
/// checked as vertices are discovered.
#[allow(clippy::too_many_arguments)]
fn expand<M: VertexMask>(
    g: &Graph,
    me: &mut Side,
    other: &Side,
    epoch: u32,
    depth: u32,
    reverse: bool,
    follow: impl Fn(VertexId, VertexId) -> bool,
    mask: &M,
    skip_hubs: Option<&HubSet>,
    stats: &mut SearchStats,
    best: &mut u32,
    meet: &mut VertexId,
    mut trace: Option<&mut Vec<VertexId>>,
) {
    me.next.clear();
    for i in 0..me.frontier.len() {
        let u = me.frontier[i];
        if skip_hubs.is_some_and(|h| h.contains(u)) {
            continue;
        }
        stats.visited += 1;
        if let Some(t) = trace.as_deref_mut() {
            t.push(u);
        }
        for &v in g.neighbors(u, reverse) {
            if me.seen(v, epoch) || mask.masked(v) || !follow(u, v) {
                continue;
            }
            me.mark(v, depth + 1, u, epoch);
            me.next.push(v);
            stats.enqueued += 1;
            if other.seen(v, epoch) {
                let cand = depth + 1 + other.level[v as usize];
                if cand < *best {
                    *best = cand;
                    *meet = v;
                }
            }
        }
    }
    std::mem::swap(&mut me.frontier, &mut me.next);
}

#[allow(clippy::too_many_arguments)]
fn expand_restricted(
    g: &Graph,
    hubs: &HubSet,
    me: &mut Side,
    other: &Side,
    epoch: u32,
    depth: u32,
    reverse: bool,
    allow: &impl Fn(VertexId, VertexId) -> bool,
    skip_hubs: bool,
    stats: &mut SearchStats,
    best: &mut u32,
    meet: &mut VertexId,
) {
    expand(g, me, other, epoch, depth, reverse, allow, &NoMask, skip_hubs.then_some(hubs), stats, best, meet, None);
    for &v in &me.frontier {
        if hubs.contains(v) {
            me.min_hub_level = me.min_hub_level.min(depth + 1);
        }
    }
}

pub fn bfs_query(g: &Graph, s: VertexId, t: VertexId, k: u32) -> QueryResult {
    Searcher::new(g.n()).bfs(g, s, t, k)
}

pub fn bibfs_query(g: &Graph, s: VertexId, t: VertexId, k: u32) -> QueryResult {
    Searcher::new(g.n()).bibfs(g, s, t, k)
}

pub fn hn_query(g: &Graph, hubs: &HubSet, net: &HubNetwork, s: VertexId, t: VertexId, k: u32) -> QueryResult {
    Searcher::new(g.n()).hn(g, hubs, net, s, t, k)
}

pub fn hp_bbfs<M: VertexMask>(g: &Graph, mask: &M, s: VertexId, t: VertexId, bound: u32) -> QueryResult {
    Searcher::new(g.n()).hp_bbfs(g, mask, s, t, bound)
}
