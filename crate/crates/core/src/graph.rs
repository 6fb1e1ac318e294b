//! Immutable unweighted graphs in compressed sparse row form.
//!
//! Every vertex's neighbor slice is strictly ascending and free of
//! self-loops and duplicates. The index module relies on this: a label's
//! next-hop port is an offset into one of these slices.

use std::collections::{HashMap, VecDeque};
use std::hash::Hasher;
use std::io::BufRead;

use thiserror::Error;

/// Dense 0-based vertex index.
pub type VertexId = u32;

/// Largest vertex id the loader accepts (`n` stays below `u32::MAX - 1`).
pub const MAX_VERTEX_ID: u64 = u32::MAX as u64 - 2;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge list contains no edges")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Adjacency {
    offsets: Vec<u64>,
    targets: Vec<VertexId>,
}

impl Adjacency {
    /// Builds from `(source, target)` pairs that are already sorted and deduplicated.
    fn from_sorted(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut offsets = vec![0u64; n + 1];
        for &(u, _) in edges {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = edges.iter().map(|&(_, v)| v).collect();
        Adjacency { offsets, targets }
    }

    #[inline]
    fn slice(&self, v: VertexId) -> &[VertexId] {
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        &self.targets[lo..hi]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    out: Adjacency,
    /// Reverse adjacency, present only for directed graphs.
    rev: Option<Adjacency>,
}

impl Graph {
    /// Builds a graph over `n` vertices (raised to cover the largest id).
    ///
    /// Self-loops are dropped and duplicates collapsed. Undirected graphs get
    /// both orientations of every edge.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)], directed: bool) -> Self {
        let n = edges
            .iter()
            .map(|&(u, v)| u.max(v) as usize + 1)
            .max()
            .unwrap_or(0)
            .max(n);
        let mut fwd: Vec<(VertexId, VertexId)> =
            Vec::with_capacity(if directed { edges.len() } else { 2 * edges.len() });
        for &(u, v) in edges {
            if u == v {
                continue;
            }
            fwd.push((u, v));
            if !directed {
                fwd.push((v, u));
            }
        }
        fwd.sort_unstable();
        fwd.dedup();
        let out = Adjacency::from_sorted(n, &fwd);
        let rev = directed.then(|| {
            let mut bwd: Vec<_> = fwd.iter().map(|&(u, v)| (v, u)).collect();
            bwd.sort_unstable();
            Adjacency::from_sorted(n, &bwd)
        });
        Graph { n, directed, out, rev }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored directed edges (undirected edges count twice).
    pub fn m(&self) -> u64 {
        self.out.targets.len() as u64
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn out_offsets(&self) -> &[u64] {
        &self.out.offsets
    }

    pub fn out_targets(&self) -> &[VertexId] {
        &self.out.targets
    }

    #[inline]
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        self.out.slice(v)
    }

    /// Predecessors of `v`; identical to [`Graph::out_neighbors`] when undirected.
    #[inline]
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        match &self.rev {
            Some(rev) => rev.slice(v),
            None => self.out.slice(v),
        }
    }

    /// Neighbors in traversal direction: forward follows out-edges,
    /// `reverse` follows in-edges.
    #[inline]
    pub fn neighbors(&self, v: VertexId, reverse: bool) -> &[VertexId] {
        if reverse {
            self.in_neighbors(v)
        } else {
            self.out_neighbors(v)
        }
    }

    /// Total degree: out + in for directed graphs.
    pub fn degree(&self, v: VertexId) -> usize {
        match &self.rev {
            Some(rev) => self.out.slice(v).len() + rev.slice(v).len(),
            None => self.out.slice(v).len(),
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.n && self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// FNV-1a over the adjacency arrays (little-endian), used to tie an
    /// index file to the graph it was built from.
    pub fn checksum(&self) -> u64 {
        let mut h = fnv::FnvHasher::default();
        let mut feed = |adj: &Adjacency| {
            for o in &adj.offsets {
                h.write(&o.to_le_bytes());
            }
            for t in &adj.targets {
                h.write(&t.to_le_bytes());
            }
        };
        feed(&self.out);
        if let Some(rev) = &self.rev {
            feed(rev);
        }
        h.finish()
    }
}

/// Reads a SNAP-style edge list: one `u v` pair per line, `#` comments,
/// extra columns ignored. Ids need not be dense; gaps become isolated vertices.
pub fn load_edge_list<R: BufRead>(source: R, directed: bool) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut max_id: Option<u32> = None;
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_ascii_whitespace();
        let mut next_id = || -> Result<u32, GraphError> {
            let tok = tokens.next().ok_or_else(|| GraphError::Parse {
                line: lineno,
                msg: "expected two vertex ids".into(),
            })?;
            let id: u64 = tok.parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: format!("invalid vertex id {tok:?}"),
            })?;
            if id > MAX_VERTEX_ID {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("vertex id {id} out of range"),
                });
            }
            Ok(id as u32)
        };
        let u = next_id()?;
        let v = next_id()?;
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        if u != v {
            edges.push((u, v));
        }
    }
    if edges.is_empty() {
        return Err(GraphError::Empty);
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    Ok(Graph::from_edges(n, &edges, directed))
}

/// An ordered vertex sequence; consecutive vertices must be joined by an edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<VertexId>);

impl Path {
    pub fn single(v: VertexId) -> Self {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Edge count.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<VertexId> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<VertexId> {
        self.0.last().copied()
    }
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// True iff `p` is non-empty, in range, and every hop is an edge.
pub fn validate_path(g: &Graph, p: &Path) -> bool {
    if p.0.is_empty() || p.0.iter().any(|&v| v as usize >= g.n()) {
        return false;
    }
    p.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Exact BFS levels from `source` (or towards it when `reverse`) up to `max_depth`.
pub fn bounded_bfs(
    g: &Graph,
    source: VertexId,
    max_depth: u32,
    reverse: bool,
) -> HashMap<VertexId, u32> {
    bounded_bfs_within(g, source, max_depth, reverse, |_| true)
}

/// [`bounded_bfs`] restricted to the subgraph induced by vertices for which
/// `allowed` holds. The source is always included.
pub fn bounded_bfs_within<F>(
    g: &Graph,
    source: VertexId,
    max_depth: u32,
    reverse: bool,
    allowed: F,
) -> HashMap<VertexId, u32>
where
    F: Fn(VertexId) -> bool,
{
    let mut levels = HashMap::new();
    levels.insert(source, 0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let lu = levels[&u];
        if lu >= max_depth {
            continue;
        }
        for &v in g.neighbors(u, reverse) {
            if !allowed(v) || levels.contains_key(&v) {
                continue;
            }
            levels.insert(v, lu + 1);
            queue.push_back(v);
        }
    }
    levels
}
