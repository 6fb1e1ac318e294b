//! Seeded synthetic graphs written as edge lists.

use std::collections::HashSet;
use std::fmt::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SynthKind {
    /// Uniform random graph with a fixed edge count; param = average degree.
    Er,
    /// Preferential attachment; param = edges per new vertex.
    Ba,
    Star,
    Chain,
}

impl FromStr for SynthKind {
    type Err = SynthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "er" => Ok(SynthKind::Er),
            "ba" => Ok(SynthKind::Ba),
            "star" => Ok(SynthKind::Star),
            "chain" => Ok(SynthKind::Chain),
            _ => Err(SynthError::BadParam(format!("unknown kind {s:?} (expected er, ba, star or chain)"))),
        }
    }
}

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("need at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("{0}")]
    BadParam(String),
}

/// Undirected edge list for the requested generator.
pub fn gen_edges(kind: SynthKind, n: usize, param: f64, seed: u64) -> Result<Vec<(VertexId, VertexId)>, SynthError> {
    if n < 2 {
        return Err(SynthError::TooSmall(n));
    }
    if n as u64 > crate::graph::MAX_VERTEX_ID {
        return Err(SynthError::BadParam(format!("n = {n} exceeds the vertex id range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n32 = n as VertexId;
    Ok(match kind {
        SynthKind::Star => (1..n32).map(|v| (0, v)).collect(),
        SynthKind::Chain => (1..n32).map(|v| (v - 1, v)).collect(),
        SynthKind::Er => {
            if !(param.is_finite() && param > 0.0) {
                return Err(SynthError::BadParam(format!("average degree must be positive, got {param}")));
            }
            let max = (n as u64) * (n as u64 - 1) / 2;
            let target = ((n as f64 * param / 2.0).round() as u64).min(max);
            let mut seen = HashSet::with_capacity(target as usize);
            let mut edges = Vec::with_capacity(target as usize);
            while (edges.len() as u64) < target {
                let (a, b) = (rng.gen_range(0..n32), rng.gen_range(0..n32));
                if a == b {
                    continue;
                }
                let e = (a.min(b), a.max(b));
                if seen.insert(e) {
                    edges.push(e);
                }
            }
            edges
        }
        SynthKind::Ba => {
            if param.fract() != 0.0 || param < 1.0 {
                return Err(SynthError::BadParam(format!("edges per vertex must be a positive integer, got {param}")));
            }
            let m0 = param as usize;
            if m0 + 1 > n {
                return Err(SynthError::BadParam(format!("need n > m0, got n = {n}, m0 = {m0}")));
            }
            let mut edges = Vec::new();
            let mut ends: Vec<VertexId> = Vec::new();
            for a in 0..=m0 as VertexId {
                for b in a + 1..=m0 as VertexId {
                    edges.push((a, b));
                    ends.extend([a, b]);
                }
            }
            let mut picked = Vec::with_capacity(m0);
            for v in (m0 + 1) as VertexId..n32 {
                picked.clear();
                while picked.len() < m0 {
                    let u = ends[rng.gen_range(0..ends.len())];
                    if !picked.contains(&u) {
                        picked.push(u);
                    }
                }
                for &u in &picked {
                    edges.push((u, v));
                    ends.extend([u, v]);
                }
            }
            edges
        }
    })
}

/// Edge-list bytes (`u v` per line, one comment header).
pub fn gen_synthetic(kind: SynthKind, n: usize, param: f64, seed: u64) -> Result<Vec<u8>, SynthError> {
    let edges = gen_edges(kind, n, param, seed)?;
    let mut out = String::with_capacity(edges.len() * 12);
    writeln!(out, "# {kind:?} n={n} param={param} seed={seed}").unwrap();
    for (a, b) in edges {
        writeln!(out, "{a} {b}").unwrap();
    }
    Ok(out.into_bytes())
}
