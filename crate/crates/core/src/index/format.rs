//! Little-endian on-disk layout:
//!
//! ```text
//! "HUB2" | version u16 | flags u16 (bit0 = directed) | k u8 | pad 3
//! n u64 | m u64 | graph checksum u64 | hubs u32 | hub ids u32 * hubs
//! matrix u8 * hubs^2
//! witnesses, one per finite off-diagonal cell in row-major order:
//!     tag u8 (0 inline, 1 via); inline: len u8, ids u32 * (len + 1); via: rank u32
//! labels, per vertex: count u16, then (hub rank u32, dist u8, port u32) * count
//!     (directed: incoming table, then outgoing table)
//! trailer: FNV-1a u64 over every preceding byte
//! ```

use std::hash::Hasher;
use std::io::{Read, Write};

use super::{Hub2Index, Hub2Matrix, IndexConfig, IndexError, LabelEntry, LabelTable, WitnessRef, INF, MAX_K};
use crate::graph::VertexId;
use crate::hubs::HubSet;

pub const MAGIC: &[u8; 4] = b"HUB2";
pub const FORMAT_VERSION: u16 = 1;
const FLAG_DIRECTED: u16 = 1;
const TAG_INLINE: u8 = 0;
const TAG_VIA: u8 = 1;

fn fnv(bytes: &[u8]) -> u64 {
    let mut h = fnv::FnvHasher::default();
    h.write(bytes);
    h.finish()
}

pub fn to_bytes(idx: &Hub2Index) -> Result<Vec<u8>, IndexError> {
    let c = &idx.config;
    let mut buf = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    let flags = if c.directed { FLAG_DIRECTED } else { 0 };
    buf.extend_from_slice(&flags.to_le_bytes());
    buf.push(c.k as u8);
    buf.extend_from_slice(&[0; 3]);
    buf.extend_from_slice(&c.n.to_le_bytes());
    buf.extend_from_slice(&c.m.to_le_bytes());
    buf.extend_from_slice(&c.graph_checksum.to_le_bytes());
    buf.extend_from_slice(&(idx.hubs.len() as u32).to_le_bytes());
    for &h in idx.hubs.ids() {
        buf.extend_from_slice(&h.to_le_bytes());
    }
    let m = &idx.matrix;
    buf.extend_from_slice(m.raw());
    for x in 0..m.dim() as u32 {
        for y in 0..m.dim() as u32 {
            if x == y || m.dist(x, y) == INF {
                continue;
            }
            match m.witness(x, y) {
                Some(WitnessRef::Inline(path)) => {
                    buf.push(TAG_INLINE);
                    buf.push((path.len() - 1) as u8);
                    for &v in path {
                        buf.extend_from_slice(&v.to_le_bytes());
                    }
                }
                Some(WitnessRef::Via(w)) => {
                    buf.push(TAG_VIA);
                    buf.extend_from_slice(&w.to_le_bytes());
                }
                None => return Err(IndexError::Integrity(format!("no witness for hub pair ({x},{y})"))),
            }
        }
    }
    for table in idx.tables() {
        for v in 0..table.n() as VertexId {
            let labels = table.labels(v);
            let count = u16::try_from(labels.len()).map_err(|_| IndexError::TooManyLabels(v))?;
            buf.extend_from_slice(&count.to_le_bytes());
            for e in labels {
                buf.extend_from_slice(&e.hub_rank.to_le_bytes());
                buf.push(e.dist);
                buf.extend_from_slice(&e.port.to_le_bytes());
            }
        }
    }
    let sum = fnv(&buf);
    buf.extend_from_slice(&sum.to_le_bytes());
    Ok(buf)
}

pub(super) fn encoded_len(idx: &Hub2Index) -> u64 {
    let dim = idx.hubs.len() as u64;
    let m = &idx.matrix;
    let witness: u64 = m
        .witnesses
        .iter()
        .map(|w| match w {
            super::Witness::Inline { len, .. } => 2 + 4 * (u64::from(*len) + 1),
            super::Witness::Via(_) => 5,
        })
        .sum();
    let labels: u64 = idx.tables().map(|t| 2 * t.n() as u64 + 9 * t.total() as u64).sum();
    40 + 4 * dim + dim * dim + witness + labels + 8
}

pub fn serialize<W: Write>(idx: &Hub2Index, mut sink: W) -> Result<(), IndexError> {
    sink.write_all(&to_bytes(idx)?)?;
    sink.flush()?;
    Ok(())
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], IndexError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len()).ok_or(IndexError::Truncated)?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, IndexError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, IndexError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, IndexError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, IndexError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

fn malformed(msg: impl Into<String>) -> IndexError {
    IndexError::Malformed(msg.into())
}

pub fn deserialize<R: Read>(mut source: R) -> Result<Hub2Index, IndexError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    from_bytes(&bytes)
}

fn from_bytes(bytes: &[u8]) -> Result<Hub2Index, IndexError> {
    if bytes.len() < MAGIC.len() {
        return Err(IndexError::Truncated);
    }
    if &bytes[..4] != MAGIC {
        return Err(IndexError::BadMagic);
    }
    if bytes.len() < 8 {
        return Err(IndexError::Truncated);
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(IndexError::UnsupportedVersion(version));
    }
    if bytes.len() < 48 {
        return Err(IndexError::Truncated);
    }
    let (body, trailer) = bytes.split_at(bytes.len() - 8);
    if fnv(body) != u64::from_le_bytes(trailer.try_into().unwrap()) {
        return Err(IndexError::ChecksumMismatch);
    }

    let mut cur = Cursor { buf: body, pos: 6 };
    let flags = cur.u16()?;
    if flags & !FLAG_DIRECTED != 0 {
        return Err(malformed(format!("unknown flags {flags:#x}")));
    }
    let directed = flags & FLAG_DIRECTED != 0;
    let k = u32::from(cur.u8()?);
    if k == 0 || k > MAX_K {
        return Err(malformed(format!("k = {k}")));
    }
    cur.take(3)?;
    let n = cur.u64()?;
    let m = cur.u64()?;
    let graph_checksum = cur.u64()?;
    let n_usize = usize::try_from(n).map_err(|_| malformed("n too large"))?;
    let dim = cur.u32()? as usize;
    if dim == 0 || dim > n_usize {
        return Err(malformed(format!("{dim} hubs for n = {n}")));
    }
    let mut ids = Vec::with_capacity(dim);
    for _ in 0..dim {
        let h = cur.u32()?;
        if u64::from(h) >= n || ids.last().is_some_and(|&p| p >= h) {
            return Err(malformed("hub ids must be ascending and below n"));
        }
        ids.push(h);
    }
    let hubs = HubSet::from_ids(n_usize, ids);

    let cells = dim.checked_mul(dim).ok_or_else(|| malformed("hub count overflow"))?;
    let raw = cur.take(cells)?.to_vec();
    let mut matrix = Hub2Matrix::new(dim);
    for x in 0..dim {
        let mut row: Vec<(u32, u8, WitnessRef<'_>)> = Vec::new();
        let mut paths: Vec<Vec<VertexId>> = Vec::new();
        let mut shapes = Vec::new();
        for y in 0..dim {
            let d = raw[x * dim + y];
            if x == y {
                if d != 0 {
                    return Err(malformed("nonzero diagonal"));
                }
                continue;
            }
            if d == INF {
                continue;
            }
            if d == 0 || u32::from(d) > k {
                return Err(malformed(format!("matrix entry {d} out of range")));
            }
            match cur.u8()? {
                TAG_INLINE => {
                    let len = cur.u8()?;
                    if len != d {
                        return Err(malformed("inline witness length differs from distance"));
                    }
                    let mut path = Vec::with_capacity(len as usize + 1);
                    for _ in 0..=len {
                        let v = cur.u32()?;
                        if u64::from(v) >= n {
                            return Err(malformed("witness vertex out of range"));
                        }
                        path.push(v);
                    }
                    if path[0] != hubs.id(x as u32) || path[len as usize] != hubs.id(y as u32) {
                        return Err(malformed("inline witness endpoints differ from hubs"));
                    }
                    shapes.push((y as u32, d, None));
                    paths.push(path);
                }
                TAG_VIA => {
                    let w = cur.u32()?;
                    if w as usize >= dim || w as usize == x || w as usize == y {
                        return Err(malformed("via witness out of range"));
                    }
                    shapes.push((y as u32, d, Some(w)));
                }
                t => return Err(malformed(format!("unknown witness tag {t}"))),
            }
        }
        let mut paths = paths.iter();
        for (y, d, via) in shapes {
            let w = match via {
                Some(w) => WitnessRef::Via(w),
                None => WitnessRef::Inline(paths.next().unwrap()),
            };
            row.push((y, d, w));
        }
        matrix.push_row(row);
    }
    if matrix.raw() != raw.as_slice() {
        return Err(malformed("matrix and witness section disagree"));
    }

    let read_table = |cur: &mut Cursor<'_>| -> Result<LabelTable, IndexError> {
        let mut counts = Vec::with_capacity(n_usize);
        let mut entries = Vec::new();
        for _ in 0..n_usize {
            let count = cur.u16()? as usize;
            counts.push(count);
            let mut prev: Option<(u8, u32)> = None;
            for _ in 0..count {
                let hub_rank = cur.u32()?;
                let dist = cur.u8()?;
                let port = cur.u32()?;
                if hub_rank as usize >= dim || dist == 0 || u32::from(dist) > k {
                    return Err(malformed("label entry out of range"));
                }
                if prev.is_some_and(|p| p >= (dist, hub_rank)) {
                    return Err(malformed("labels not sorted by (dist, hub)"));
                }
                prev = Some((dist, hub_rank));
                entries.push(LabelEntry { hub_rank, dist, port });
            }
        }
        Ok(LabelTable::from_parts(&counts, |_, e| *e = entries))
    };
    let incoming = read_table(&mut cur)?;
    let outgoing = if directed { Some(read_table(&mut cur)?) } else { None };
    if cur.pos != body.len() {
        return Err(malformed("trailing bytes after label section"));
    }

    Ok(Hub2Index {
        config: IndexConfig { k, directed, n, m, graph_checksum },
        hubs,
        matrix,
        incoming,
        outgoing,
    })
}
