//! Brute-force genus by tracing the faces of every checkerboard atom.
//!
//! At each vertex the angles fall into two alternating classes; a coloring
//! picks which class is white. White faces are traced along the edge
//! orientation through white angles, black faces against it through black
//! angles. No chord diagram or matrix is involved.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::circuit::{VertexClass, Visit};
use crate::error::{Error, Result};
use crate::genus::{Analysis, PermissiblePartition};
use crate::graph::{
    find_source_sink_orientation, Angle, Orientation, StarGraph, Topology, VertexId,
};

/// Default vertex limit for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 20;

/// Per vertex, the class of angles colored white. Angle `(i, i + 1)` has
/// class `i mod 2`, so bit `false` makes angle `(0, 1)` white.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomColoring {
    choice: BTreeMap<VertexId, bool>,
}

impl AtomColoring {
    pub fn new(choice: BTreeMap<VertexId, bool>) -> Self {
        Self { choice }
    }

    /// Same bit order as partition masks: the lowest vertex is the top bit.
    pub fn from_mask(vertices: &[VertexId], mask: u64) -> Self {
        let n = vertices.len();
        Self {
            choice: vertices
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, mask >> (n - 1 - i) & 1 == 1))
                .collect(),
        }
    }

    pub fn mask(&self) -> u64 {
        self.choice.values().fold(0, |m, &b| m << 1 | b as u64)
    }

    pub fn bit(&self, v: VertexId) -> Option<bool> {
        self.choice.get(&v).copied()
    }

    pub fn choice(&self) -> &BTreeMap<VertexId, bool> {
        &self.choice
    }

    pub fn is_white(&self, angle: Angle) -> Option<bool> {
        Some(angle.class() == self.bit(angle.vertex)? as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceCount {
    pub white: usize,
    pub black: usize,
    pub chi: i64,
    pub genus: usize,
}

/// Number of cycles of a permutation given as a successor table; fails if
/// the table is not a bijection.
fn cycle_count(succ: &[usize]) -> Result<usize> {
    let mut hits = vec![0u8; succ.len()];
    for &s in succ {
        hits[s] += 1;
    }
    if let Some(e) = hits.iter().position(|&h| h != 1) {
        return Err(Error::BrokenInvariant(format!(
            "face tracing enters edge {e} {} times",
            hits[e]
        )));
    }
    let mut seen = vec![false; succ.len()];
    let mut count = 0;
    for start in 0..succ.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = succ[x];
        }
    }
    Ok(count)
}

/// Dense tracing state, reusable across colorings of one graph.
struct Tracer {
    t: Topology,
    tails: Vec<usize>,
    bits: Vec<bool>,
}

impl Tracer {
    fn new(g: &StarGraph, orientation: &Orientation) -> Result<Self> {
        let t = g.topology()?;
        let tails = orientation.tails(&t)?;
        let out = orientation.outgoing_mask(&t);
        for v in 0..t.vertex_count() {
            if (0..t.degree(v)).any(|s| out[t.half_edge(v, s)] == out[t.half_edge(v, s + 1)]) {
                return Err(Error::Malformed(format!(
                    "orientation does not alternate at {}",
                    t.vertex_id(v)
                )));
            }
        }
        let bits = vec![false; t.vertex_count()];
        Ok(Self { t, tails, bits })
    }

    /// The neighbor of slot `s` across the angle of class `class`.
    fn across(&self, v: usize, s: usize, class: bool) -> usize {
        let d = self.t.degree(v);
        if (s % 2 == 1) == class {
            (s + 1) % d
        } else {
            (s + d - 1) % d
        }
    }

    fn count(&self) -> Result<FaceCount> {
        let t = &self.t;
        let m = t.edge_count();
        let mut forward = vec![0; m];
        let mut backward = vec![0; m];
        for e in 0..m {
            let tail = self.tails[e];
            let head = t.partner(tail);

            let v = t.vertex_of(head);
            let next = t.half_edge(v, self.across(v, t.slot_of(head), self.bits[v]));
            forward[e] = t.edge_of(next);

            let v = t.vertex_of(tail);
            let prev = t.half_edge(v, self.across(v, t.slot_of(tail), !self.bits[v]));
            backward[e] = t.edge_of(prev);
            if self.tails[forward[e]] != next || self.tails[backward[e]] == prev {
                return Err(Error::BrokenInvariant(format!(
                    "face tracing leaves the orientation at edge {e}"
                )));
            }
        }
        let white = cycle_count(&forward)?;
        let black = cycle_count(&backward)?;
        let chi = t.vertex_count() as i64 - m as i64 + (white + black) as i64;
        if chi % 2 != 0 || chi > 2 {
            return Err(Error::BrokenInvariant(format!(
                "Euler characteristic {chi}"
            )));
        }
        Ok(FaceCount {
            white,
            black,
            chi,
            genus: ((2 - chi) / 2) as usize,
        })
    }
}

/// Counts white and black faces of the atom given by `coloring`.
pub fn trace_faces(
    g: &StarGraph,
    orientation: &Orientation,
    coloring: &AtomColoring,
) -> Result<FaceCount> {
    let mut tracer = Tracer::new(g, orientation)?;
    for v in 0..tracer.t.vertex_count() {
        let id = tracer.t.vertex_id(v);
        tracer.bits[v] = coloring
            .bit(id)
            .ok_or_else(|| Error::Malformed(format!("no color at vertex {id}")))?;
    }
    tracer.count()
}

/// Class of the angle a visit turns through, for a rotating visit.
fn turned_class(v: VertexId, degree: usize, visit: &Visit) -> Result<bool> {
    Angle::between(v, degree, visit.arrive, visit.depart)
        .map(|a| a.class() == 1)
        .ok_or_else(|| {
            Error::BrokenInvariant(format!("visit at {v} does not turn through an angle"))
        })
}

/// The atom coloring a partition stands for. A chord drawn at a visit keeps
/// the turned angle on the far side from the chord's own side, so the white
/// class at a vertex is its side bit XOR the class opposite to the turned
/// angle. Double chords read it at the first visit after the principal one.
pub fn coloring_of_partition(a: &Analysis, p: &PermissiblePartition) -> Result<AtomColoring> {
    let mut choice = BTreeMap::new();
    for (&v, &class) in &a.classes {
        let side = p
            .side(v)
            .ok_or_else(|| Error::Malformed(format!("partition has no side for {v}")))?;
        let positions = a.circuit.positions_of(v);
        let degree = 2 * positions.len();
        let k = match class {
            VertexClass::Splitting6 { principal } => {
                let len = a.circuit.len();
                *positions
                    .iter()
                    .filter(|&&q| q != principal)
                    .min_by_key(|&&q| (q + len - principal) % len)
                    .ok_or_else(|| {
                        Error::BrokenInvariant(format!("splitting vertex {v} lacks visits"))
                    })?
            }
            _ => positions[0],
        };
        let turned = turned_class(v, degree, &a.circuit.visits()[k])?;
        choice.insert(v, side.bit() ^ !turned);
    }
    Ok(AtomColoring { choice })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub min_genus: usize,
    /// Least minimizing coloring.
    pub witness: AtomColoring,
    pub faces: FaceCount,
}

/// Minimum genus over all `2^n` colorings. Refuses graphs with more than
/// `cap` vertices.
pub fn oracle_min_genus(g: &StarGraph, cap: usize) -> Result<OracleResult> {
    let n = g.vertex_count();
    if n > cap.min(63) {
        return Err(Error::TooManyVertices {
            n,
            limit: cap.min(63),
        });
    }
    if n == 0 {
        return Err(Error::Malformed("graph has no vertices".into()));
    }
    let orientation = find_source_sink_orientation(g)?;
    let base = Tracer::new(g, &orientation)?;
    let vertices: Vec<VertexId> = base.t.vertex_ids().to_vec();
    let (min_genus, mask, faces) = (0..1u64 << n)
        .into_par_iter()
        .map_init(
            || Tracer {
                t: base.t.clone(),
                tails: base.tails.clone(),
                bits: vec![false; n],
            },
            |tr, mask| {
                for (i, b) in tr.bits.iter_mut().enumerate() {
                    *b = mask >> (n - 1 - i) & 1 == 1;
                }
                tr.count().map(|f| (f.genus, mask, f))
            },
        )
        .try_reduce_with(|x, y| Ok(if (y.0, y.1) < (x.0, x.1) { y } else { x }))
        .expect("at least one coloring")?;
    Ok(OracleResult {
        min_genus,
        witness: AtomColoring::from_mask(&vertices, mask),
        faces,
    })
}

/// Genus of every coloring, indexed by mask.
pub fn all_coloring_genera(g: &StarGraph, cap: usize) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if n > cap.min(63) {
        return Err(Error::TooManyVertices {
            n,
            limit: cap.min(63),
        });
    }
    let orientation = find_source_sink_orientation(g)?;
    let base = Tracer::new(g, &orientation)?;
    (0..1u64 << n)
        .into_par_iter()
        .map_init(
            || Tracer {
                t: base.t.clone(),
                tails: base.tails.clone(),
                bits: vec![false; n],
            },
            |tr, mask| {
                for (i, b) in tr.bits.iter_mut().enumerate() {
                    *b = mask >> (n - 1 - i) & 1 == 1;
                }
                tr.count().map(|f| f.genus)
            },
        )
        .collect()
}
