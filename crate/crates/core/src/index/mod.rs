//! Hub²-labeling index: a bounded hub-to-hub distance matrix with path
//! witnesses, plus per-vertex core-hub labels.
//!
//! A hub `h` is a core hub of `v` when `d(v, h) <= k` and no other hub lies
//! on any shortest path between them. Labels carry a port, the offset of the
//! next hop toward the hub in `v`'s sorted adjacency slice, so label paths
//! can be expanded hop by hop without storing them.

mod format;
mod oracle;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::hubs::HubSet;

pub use format::{deserialize, serialize, to_bytes, FORMAT_VERSION, MAGIC};
pub use oracle::{core_hubs_oracle, CoreHubOracle, LabelSide};

/// Matrix sentinel for pairs farther apart than `k` (or unreachable).
pub const INF: u8 = u8::MAX;
/// Distances are stored in one byte.
pub const MAX_K: u32 = 254;

const NONE: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("index needs at least one hub")]
    NoHubs,
    #[error("k must be in 1..={MAX_K}, got {0}")]
    BadK(u32),
    #[error("not a hub index file (bad magic)")]
    BadMagic,
    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u16),
    #[error("index file checksum mismatch")]
    ChecksumMismatch,
    #[error("index file truncated")]
    Truncated,
    #[error("malformed index: {0}")]
    Malformed(String),
    #[error("index was built for a different graph ({0})")]
    GraphMismatch(String),
    #[error("index integrity violated: {0}")]
    Integrity(String),
    #[error("vertex {0} has too many labels for the file format")]
    TooManyLabels(VertexId),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Number of matrix cells for `hubs` hubs, one byte each.
pub fn matrix_entries(hubs: usize) -> u64 {
    (hubs as u64) * (hubs as u64)
}

/// How the shortest path behind a finite matrix entry is recovered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Witness {
    /// Explicit path stored in the matrix pool, no hub strictly inside.
    Inline { start: usize, len: u8 },
    /// Splits at the hub with this rank.
    Via(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessRef<'a> {
    Inline(&'a [VertexId]),
    Via(u32),
}

/// Distances between hub ranks, `INF` beyond `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hub2Matrix {
    dim: usize,
    dist: Vec<u8>,
    /// Row-major witnesses of finite off-diagonal entries.
    row_offsets: Vec<usize>,
    cols: Vec<u32>,
    witnesses: Vec<Witness>,
    pool: Vec<VertexId>,
}

impl Hub2Matrix {
    fn new(dim: usize) -> Self {
        let mut dist = vec![INF; dim * dim];
        for i in 0..dim {
            dist[i * dim + i] = 0;
        }
        Hub2Matrix { dim, dist, row_offsets: vec![0], cols: Vec::new(), witnesses: Vec::new(), pool: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn dist(&self, x: u32, y: u32) -> u8 {
        self.dist[x as usize * self.dim + y as usize]
    }

    pub fn raw(&self) -> &[u8] {
        &self.dist
    }

    pub fn witness(&self, x: u32, y: u32) -> Option<WitnessRef<'_>> {
        let lo = self.row_offsets[x as usize];
        let hi = self.row_offsets[x as usize + 1];
        let i = lo + self.cols[lo..hi].binary_search(&y).ok()?;
        Some(match self.witnesses[i] {
            Witness::Inline { start, len } => WitnessRef::Inline(&self.pool[start..start + len as usize + 1]),
            Witness::Via(w) => WitnessRef::Via(w),
        })
    }

    /// Appends the next row; `entries` are `(col, dist, witness)` sorted by col.
    fn push_row<'a>(&mut self, entries: impl IntoIterator<Item = (u32, u8, WitnessRef<'a>)>) {
        let x = self.row_offsets.len() - 1;
        for (y, d, w) in entries {
            self.dist[x * self.dim + y as usize] = d;
            self.cols.push(y);
            let w = match w {
                WitnessRef::Inline(path) => {
                    let start = self.pool.len();
                    self.pool.extend_from_slice(path);
                    Witness::Inline { start, len: (path.len() - 1) as u8 }
                }
                WitnessRef::Via(w) => Witness::Via(w),
            };
            self.witnesses.push(w);
        }
        self.row_offsets.push(self.cols.len());
    }

    pub fn finite_entries(&self) -> usize {
        self.dist.iter().filter(|&&d| d != INF).count()
    }

    /// Expands the witness of `(x, y)` into a vertex path, recursing through
    /// intermediate hubs.
    pub fn expand_path(&self, hubs: &HubSet, x: u32, y: u32, out: &mut Vec<VertexId>) -> Result<(), IndexError> {
        if x == y {
            out.push(hubs.id(x));
            return Ok(());
        }
        match self.witness(x, y) {
            Some(WitnessRef::Inline(path)) => out.extend_from_slice(path),
            Some(WitnessRef::Via(w)) => {
                let (dxy, dxw, dwy) = (self.dist(x, y), self.dist(x, w), self.dist(w, y));
                if w == x || w == y || dxw == INF || dwy == INF || u32::from(dxw) + u32::from(dwy) != u32::from(dxy) {
                    return Err(IndexError::Integrity(format!("bad split of hub pair ({x},{y}) at {w}")));
                }
                self.expand_path(hubs, x, w, out)?;
                out.pop();
                self.expand_path(hubs, w, y, out)?;
            }
            None => return Err(IndexError::Integrity(format!("no witness for hub pair ({x},{y})"))),
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelEntry {
    pub hub_rank: u32,
    pub dist: u8,
    /// Offset of the next hop in the owning vertex's adjacency slice.
    pub port: u32,
}

/// Per-vertex labels sorted by `(dist, hub_rank)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTable {
    offsets: Vec<usize>,
    entries: Vec<LabelEntry>,
}

impl LabelTable {
    #[inline]
    pub fn labels(&self, v: VertexId) -> &[LabelEntry] {
        &self.entries[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Entries of `v` at distance exactly `dist`.
    pub fn level(&self, v: VertexId, dist: u8) -> &[LabelEntry] {
        let all = self.labels(v);
        let lo = all.partition_point(|e| e.dist < dist);
        let hi = all.partition_point(|e| e.dist <= dist);
        &all[lo..hi]
    }

    pub fn find(&self, v: VertexId, hub_rank: u32, dist: u8) -> Option<&LabelEntry> {
        let lvl = self.level(v, dist);
        lvl.binary_search_by_key(&hub_rank, |e| e.hub_rank).ok().map(|i| &lvl[i])
    }

    pub fn total(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    fn from_parts(counts: &[usize], fill: impl FnOnce(&[usize], &mut Vec<LabelEntry>)) -> Self {
        let mut offsets = Vec::with_capacity(counts.len() + 1);
        offsets.push(0);
        let mut acc = 0;
        for &c in counts {
            acc += c;
            offsets.push(acc);
        }
        let mut entries = Vec::with_capacity(acc);
        fill(&offsets, &mut entries);
        LabelTable { offsets, entries }
    }
}

/// Label contribution `(vertex, dist, port)` of one hub.
type Contribution = Vec<(VertexId, u8, u32)>;

/// Output of one hub's labeling traversals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HubLabelRun {
    /// Matrix row: `(col rank, dist, witness)` sorted by col, diagonal excluded.
    pub row: Vec<(u32, u8, RowWitness)>,
    /// Labels for vertices reached from the hub (`h -> v`).
    pub incoming: Contribution,
    /// Labels for vertices that reach the hub (`v -> h`); directed graphs only.
    pub outgoing: Contribution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowWitness {
    Inline(Vec<VertexId>),
    Via(u32),
}

struct LabelScratch {
    stamp: Vec<u32>,
    epoch: u32,
    level: Vec<u32>,
    parent: Vec<VertexId>,
    unblocked: Vec<bool>,
    blocker: Vec<u32>,
    queue: Vec<VertexId>,
}

impl LabelScratch {
    fn new(n: usize) -> Self {
        LabelScratch {
            stamp: vec![0; n],
            epoch: 0,
            level: vec![0; n],
            parent: vec![NONE; n],
            unblocked: vec![false; n],
            blocker: vec![NONE; n],
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
}

/// One traversal from hub `h` (against edge direction when `reverse`).
/// Emits a label for each non-hub vertex no other hub shadows, and, when
/// `row` is given, the matrix entries for the hubs reached.
fn traverse(
    g: &Graph,
    hubs: &HubSet,
    h: VertexId,
    k: u32,
    reverse: bool,
    s: &mut LabelScratch,
    labels: &mut Contribution,
    mut row: Option<&mut Vec<(u32, u8, RowWitness)>>,
) {
    s.reset();
    let epoch = s.epoch;
    let hi = h as usize;
    s.stamp[hi] = epoch;
    s.level[hi] = 0;
    s.parent[hi] = NONE;
    s.unblocked[hi] = true;
    s.blocker[hi] = NONE;
    s.queue.push(h);

    let mut head = 0;
    while head < s.queue.len() {
        let u = s.queue[head];
        head += 1;
        let ui = u as usize;
        let lu = s.level[ui];

        // What u hands down to the next level.
        let (ub, ublk) = if u == h {
            (true, NONE)
        } else if let Some(rank) = hubs.rank(u) {
            if let Some(row) = row.as_deref_mut() {
                let w = if s.unblocked[ui] {
                    let mut path = vec![u];
                    let mut x = u;
                    while x != h {
                        x = s.parent[x as usize];
                        path.push(x);
                    }
                    if !reverse {
                        path.reverse();
                    }
                    RowWitness::Inline(path)
                } else {
                    RowWitness::Via(s.blocker[ui])
                };
                row.push((rank, lu as u8, w));
            }
            (false, rank)
        } else {
            if s.unblocked[ui] {
                // The parent is one hop closer to h; in traversal direction
                // it precedes u, so it sits in u's opposite slice.
                let p = s.parent[ui];
                let port = g.neighbors(u, !reverse).binary_search(&p).expect("parent is a neighbor");
                labels.push((u, lu as u8, port as u32));
            }
            (s.unblocked[ui], s.blocker[ui])
        };

        if lu >= k {
            continue;
        }
        for &v in g.neighbors(u, reverse) {
            let vi = v as usize;
            if s.stamp[vi] != epoch {
                s.stamp[vi] = epoch;
                s.level[vi] = lu + 1;
                s.parent[vi] = u;
                s.unblocked[vi] = ub;
                s.blocker[vi] = ublk;
                s.queue.push(v);
            } else if s.level[vi] == lu + 1 && !ub && s.unblocked[vi] {
                s.unblocked[vi] = false;
                s.blocker[vi] = ublk;
            }
        }
    }
    if let Some(row) = row {
        row.sort_unstable_by_key(|e| e.0);
    }
}

fn label_run(g: &Graph, hubs: &HubSet, h: VertexId, k: u32, s: &mut LabelScratch) -> HubLabelRun {
    let mut run = HubLabelRun::default();
    traverse(g, hubs, h, k, false, s, &mut run.incoming, Some(&mut run.row));
    if g.is_directed() {
        traverse(g, hubs, h, k, true, s, &mut run.outgoing, None);
    }
    run
}

/// Labeling traversals for a single hub: its matrix row and label
/// contributions.
pub fn label_bfs(g: &Graph, hubs: &HubSet, h: VertexId, k: u32) -> HubLabelRun {
    assert!(hubs.contains(h), "{h} is not a hub");
    label_run(g, hubs, h, k, &mut LabelScratch::new(g.n()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexConfig {
    pub k: u32,
    pub directed: bool,
    pub n: u64,
    pub m: u64,
    pub graph_checksum: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hub2Index {
    config: IndexConfig,
    hubs: HubSet,
    matrix: Hub2Matrix,
    /// `h -> v` labels; the only table for undirected graphs.
    incoming: LabelTable,
    /// `v -> h` labels, directed graphs only.
    outgoing: Option<LabelTable>,
}

impl Hub2Index {
    pub fn config(&self) -> &IndexConfig {
        &self.config
    }

    pub fn k(&self) -> u32 {
        self.config.k
    }

    pub fn hubs(&self) -> &HubSet {
        &self.hubs
    }

    pub fn matrix(&self) -> &Hub2Matrix {
        &self.matrix
    }

    /// Labels used on the source side of a query (`v -> h`).
    pub fn out_labels(&self) -> &LabelTable {
        self.outgoing.as_ref().unwrap_or(&self.incoming)
    }

    /// Labels used on the target side of a query (`h -> v`).
    pub fn in_labels(&self) -> &LabelTable {
        &self.incoming
    }

    pub(crate) fn tables(&self) -> impl Iterator<Item = &LabelTable> {
        std::iter::once(&self.incoming).chain(self.outgoing.as_ref())
    }

    /// Checks that this index was built from `g`.
    pub fn check_graph(&self, g: &Graph) -> Result<(), IndexError> {
        let c = &self.config;
        if c.directed != g.is_directed() {
            return Err(IndexError::GraphMismatch("directedness differs".into()));
        }
        if c.n != g.n() as u64 || c.m != g.m() {
            return Err(IndexError::GraphMismatch(format!("index n={} m={}, graph n={} m={}", c.n, c.m, g.n(), g.m())));
        }
        if c.graph_checksum != g.checksum() {
            return Err(IndexError::GraphMismatch("edge checksum differs".into()));
        }
        Ok(())
    }
}

/// Builds the index with one labeling traversal per hub (two when directed).
/// Traversals run in parallel; the merge is ordered, so the result does not
/// depend on scheduling.
pub fn build(g: &Graph, hubs: &HubSet, k: u32) -> Result<Hub2Index, IndexError> {
    if hubs.is_empty() {
        return Err(IndexError::NoHubs);
    }
    if k == 0 || k > MAX_K {
        return Err(IndexError::BadK(k));
    }
    let n = g.n();
    let runs: Vec<HubLabelRun> = hubs
        .ids()
        .par_iter()
        .map_init(|| LabelScratch::new(n), |s, &h| label_run(g, hubs, h, k, s))
        .collect();

    let mut matrix = Hub2Matrix::new(hubs.len());
    for run in &runs {
        matrix.push_row(run.row.iter().map(|(y, d, w)| {
            let w = match w {
                RowWitness::Inline(p) => WitnessRef::Inline(p),
                RowWitness::Via(r) => WitnessRef::Via(*r),
            };
            (*y, *d, w)
        }));
    }

    let incoming = merge_labels(n, runs.iter().map(|r| &r.incoming));
    let outgoing = g.is_directed().then(|| merge_labels(n, runs.iter().map(|r| &r.outgoing)));

    Ok(Hub2Index {
        config: IndexConfig { k, directed: g.is_directed(), n: n as u64, m: g.m(), graph_checksum: g.checksum() },
        hubs: hubs.clone(),
        matrix,
        incoming,
        outgoing,
    })
}

/// Buckets per-hub contributions (given in hub-rank order) by vertex and
/// orders each bucket by `(dist, hub_rank)`.
fn merge_labels<'a>(n: usize, per_hub: impl Iterator<Item = &'a Contribution> + Clone) -> LabelTable {
    let mut counts = vec![0usize; n];
    for c in per_hub.clone() {
        for &(v, _, _) in c {
            counts[v as usize] += 1;
        }
    }
    LabelTable::from_parts(&counts, |offsets, entries| {
        entries.resize(offsets[n], LabelEntry { hub_rank: 0, dist: 0, port: 0 });
        let mut cursor = offsets[..n].to_vec();
        for (rank, c) in per_hub.enumerate() {
            for &(v, dist, port) in c {
                entries[cursor[v as usize]] = LabelEntry { hub_rank: rank as u32, dist, port };
                cursor[v as usize] += 1;
            }
        }
        for v in 0..n {
            // already in rank order; stable sort keeps it within a level
            entries[offsets[v]..offsets[v + 1]].sort_by_key(|e| e.dist);
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexStats {
    /// Mean label count over non-hub vertices and label tables.
    pub avg_label_count: f64,
    pub max_label_count: usize,
    pub matrix_finite_fraction: f64,
    pub matrix_entries: u64,
    /// Serialized size.
    pub bytes: u64,
}

pub fn index_stats(idx: &Hub2Index) -> IndexStats {
    let n = idx.config.n as usize;
    let non_hubs = n - idx.hubs.len();
    let tables: Vec<&LabelTable> = idx.tables().collect();
    let total: usize = tables.iter().map(|t| t.total()).sum();
    let max = tables
        .iter()
        .flat_map(|t| (0..n as VertexId).map(move |v| t.labels(v).len()))
        .max()
        .unwrap_or(0);
    let slots = non_hubs * tables.len();
    let cells = matrix_entries(idx.hubs.len());
    IndexStats {
        avg_label_count: if slots == 0 { 0.0 } else { total as f64 / slots as f64 },
        max_label_count: max,
        matrix_finite_fraction: if cells == 0 { 0.0 } else { idx.matrix.finite_entries() as f64 / cells as f64 },
        matrix_entries: cells,
        bytes: format::encoded_len(idx),
    }
}
