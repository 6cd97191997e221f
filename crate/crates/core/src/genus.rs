//! Permissible partitions, genus by GF(2) rank, and the planarity test.
//!
//! A partition gives every vertex a side, White or Black. Chords inherit the
//! side of their vertex, except that the two chords of a double chord go to
//! opposite sides: the one at `p+` takes the vertex side. The genus of the
//! atom for a partition is `(rank M_W + rank M_B) / 2`, where `M_W`, `M_B`
//! are the principal submatrices of the intersection matrix on each side.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::chords::{
    build_star_chord_diagram, chords_linked, expand, intersection_matrix, ChordDiagram, ChordKind,
    StarChordDiagram,
};
use crate::circuit::{
    classify_vertices, find_rs_circuit, EulerCircuit, TransitionSystem, VertexClass,
};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::{find_source_sink_orientation, Orientation, StarGraph, VertexId};
use crate::parity::{ParityUnionFind, Relation};

/// Largest vertex count for the exhaustive scan; partitions are `u64` masks.
pub const MAX_ENUMERATION_VERTICES: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    White,
    Black,
}

impl Side {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Side::Black
        } else {
            Side::White
        }
    }

    pub fn bit(self) -> bool {
        self == Side::Black
    }

    pub fn flip(self) -> Self {
        Self::from_bit(!self.bit())
    }

    pub fn letter(self) -> &'static str {
        match self {
            Side::White => "W",
            Side::Black => "B",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// One side per source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermissiblePartition {
    sides: BTreeMap<VertexId, Side>,
}

impl PermissiblePartition {
    pub fn new(sides: BTreeMap<VertexId, Side>) -> Self {
        Self { sides }
    }

    /// Vertex `vertices[i]` takes bit `n - 1 - i` of `mask`, so the
    /// lexicographic order of side vectors (W < B) is the numeric order of
    /// masks.
    pub fn from_mask(vertices: &[VertexId], mask: u64) -> Self {
        let n = vertices.len();
        let sides = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, Side::from_bit(mask >> (n - 1 - i) & 1 == 1)))
            .collect();
        Self { sides }
    }

    pub fn mask(&self) -> u64 {
        self.sides.values().fold(0, |m, s| m << 1 | s.bit() as u64)
    }

    pub fn side(&self, v: VertexId) -> Option<Side> {
        self.sides.get(&v).copied()
    }

    pub fn sides(&self) -> &BTreeMap<VertexId, Side> {
        &self.sides
    }

    /// Side of each chord of `d`, or `None` if a vertex of `d` has no side.
    pub fn chord_sides(&self, d: &ChordDiagram) -> Option<Vec<Side>> {
        d.chords()
            .iter()
            .map(|c| {
                let s = self.side(c.vertex)?;
                Some(if c.kind == ChordKind::DoubleMinus {
                    s.flip()
                } else {
                    s
                })
            })
            .collect()
    }

    /// Chord indices on the White side and on the Black side, ascending.
    pub fn index_sets(&self, d: &ChordDiagram) -> Option<(Vec<usize>, Vec<usize>)> {
        let sides = self.chord_sides(d)?;
        let (w, b): (Vec<_>, Vec<_>) = (0..sides.len()).partition(|&i| sides[i] == Side::White);
        Some((w, b))
    }
}

/// Source vertices of a diagram, ascending.
fn vertices_of(d: &ChordDiagram) -> Vec<VertexId> {
    d.groups().into_keys().collect()
}

/// All `2^n` partitions for the `n` source vertices of `d`, by ascending mask.
pub fn enumerate_permissible_partitions(
    d: &ChordDiagram,
) -> Result<impl Iterator<Item = PermissiblePartition>> {
    let vertices = vertices_of(d);
    if vertices.len() > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooManyVertices {
            n: vertices.len(),
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    let count = 1u64 << vertices.len();
    Ok((0..count).map(move |mask| PermissiblePartition::from_mask(&vertices, mask)))
}

/// `(rank M_W, rank M_B)` for a partition. Odd ranks are reported as broken
/// invariants since intersection matrices are alternating.
pub fn partition_ranks(
    m: &BitMatrix,
    d: &ChordDiagram,
    p: &PermissiblePartition,
) -> Result<(usize, usize)> {
    if m.dim() != d.len() {
        return Err(Error::Malformed(format!(
            "{}x{0} matrix for {} chords",
            m.dim(),
            d.len()
        )));
    }
    let (w, b) = p
        .index_sets(d)
        .ok_or_else(|| Error::Malformed("partition misses a vertex of the diagram".into()))?;
    let rw = m.principal_submatrix(&w)?.rank();
    let rb = m.principal_submatrix(&b)?.rank();
    if rw % 2 != 0 || rb % 2 != 0 {
        return Err(Error::BrokenInvariant(format!(
            "odd ranks ({rw}, {rb}) of an alternating matrix"
        )));
    }
    Ok((rw, rb))
}

/// Genus of the atom selected by `p`.
pub fn genus_of_partition(
    m: &BitMatrix,
    d: &ChordDiagram,
    p: &PermissiblePartition,
) -> Result<usize> {
    let (rw, rb) = partition_ranks(m, d, p)?;
    Ok((rw + rb) / 2)
}

/// Every intermediate object of the pipeline for one graph.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub orientation: Orientation,
    pub transitions: TransitionSystem,
    pub circuit: EulerCircuit,
    pub classes: BTreeMap<VertexId, VertexClass>,
    pub star: StarChordDiagram,
    pub diagram: ChordDiagram,
    pub matrix: BitMatrix,
}

impl Analysis {
    /// Source vertices in ascending order, i.e. the partition bit order.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.classes.keys().copied().collect()
    }
}

/// Orientation, circuit, classification, chord diagram and matrix.
pub fn analyze(g: &StarGraph) -> Result<Analysis> {
    if g.vertex_count() == 0 {
        return Err(Error::Malformed("graph has no vertices".into()));
    }
    let orientation = find_source_sink_orientation(g)?;
    let (transitions, circuit) = find_rs_circuit(g, &orientation)?;
    let classes = classify_vertices(g, &circuit)?;
    let star = build_star_chord_diagram(&circuit, &classes)?;
    let diagram = expand(&star);
    let matrix = intersection_matrix(&diagram);
    Ok(Analysis {
        orientation,
        transitions,
        circuit,
        classes,
        star,
        diagram,
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusResult {
    pub min_genus: usize,
    /// Least minimizing partition.
    pub witness: PermissiblePartition,
    /// `(rank M_W, rank M_B)` at the witness.
    pub ranks: (usize, usize),
}

/// Minimum genus over all partitions of an analyzed graph. Partitions are
/// evaluated in parallel and reduced by `(genus, mask)`, so the result does
/// not depend on scheduling.
pub fn min_genus_of(a: &Analysis) -> Result<GenusResult> {
    let vertices = a.vertices();
    let n = vertices.len();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    let d = &a.diagram;
    let m = &a.matrix;
    // per chord: bit position of its vertex in the mask, and whether it flips
    let pos: BTreeMap<VertexId, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, n - 1 - i))
        .collect();
    let layout: Vec<(usize, bool)> = d
        .chords()
        .iter()
        .map(|c| (pos[&c.vertex], c.kind == ChordKind::DoubleMinus))
        .collect();

    let best = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| -> Result<(usize, u64, (usize, usize))> {
            let (mut w, mut b) = (Vec::new(), Vec::new());
            for (i, &(bit, flip)) in layout.iter().enumerate() {
                if (mask >> bit & 1 == 1) != flip {
                    b.push(i);
                } else {
                    w.push(i);
                }
            }
            let rw = m.principal_submatrix(&w)?.rank();
            let rb = m.principal_submatrix(&b)?.rank();
            if rw % 2 != 0 || rb % 2 != 0 {
                return Err(Error::BrokenInvariant(format!(
                    "odd ranks ({rw}, {rb}) at mask {mask:#b}"
                )));
            }
            Ok(((rw + rb) / 2, mask, (rw, rb)))
        })
        .try_reduce_with(|x, y| Ok(if (y.0, y.1) < (x.0, x.1) { y } else { x }))
        .expect("at least one partition")?;

    let (min_genus, mask, ranks) = best;
    if min_genus > d.len() / 2 {
        return Err(Error::BrokenInvariant(format!(
            "genus {min_genus} above half of {} chords",
            d.len()
        )));
    }
    Ok(GenusResult {
        min_genus,
        witness: PermissiblePartition::from_mask(&vertices, mask),
        ranks,
    })
}

/// Minimal checkerboard genus of a source-sink *-graph.
pub fn min_genus(g: &StarGraph) -> Result<GenusResult> {
    min_genus_of(&analyze(g)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    /// A partition with no linked pair on either side.
    Planar { witness: PermissiblePartition },
    /// Chord indices along a cycle of side constraints with no consistent
    /// assignment, in cycle order.
    NonPlanar { conflict: Vec<usize> },
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar { .. })
    }
}

/// Side constraints over chords, solved incrementally. Triad chords must
/// share a side, double-chord chords must differ, and linked chords must
/// differ. Accepted constraints form a forest, which yields the odd cycle
/// when a new constraint contradicts it.
pub fn is_planar_diagram(d: &ChordDiagram) -> Planarity {
    let n = d.len();
    let mut uf = ParityUnionFind::new(n);
    let mut forest: Vec<Vec<usize>> = vec![Vec::new(); n];

    let mut constraints: Vec<(usize, usize, bool)> = Vec::new();
    for group in d.groups().values() {
        if let [a, b] = group[..] {
            let differ = d.chords()[a].kind != d.chords()[b].kind;
            constraints.push((a, b, differ));
        }
    }
    let linked_pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    let chords = d.chords();
    let all = constraints.into_iter().chain(
        linked_pairs
            .filter(|&(i, j)| chords_linked(chords[i].ends, chords[j].ends))
            .map(|(i, j)| (i, j, true)),
    );

    for (a, b, differ) in all {
        match uf.relate(a, b, differ) {
            Relation::Merged => {
                forest[a].push(b);
                forest[b].push(a);
            }
            Relation::Consistent => {}
            Relation::Conflict => {
                return Planarity::NonPlanar {
                    conflict: forest_path(&forest, a, b),
                }
            }
        }
    }

    let mut lowest: BTreeMap<usize, bool> = BTreeMap::new();
    let mut chord_side = Vec::with_capacity(n);
    for c in 0..n {
        let (root, parity) = uf.find(c);
        let base = *lowest.entry(root).or_insert(parity);
        chord_side.push(Side::from_bit(parity ^ base));
    }
    let sides = chords
        .iter()
        .zip(&chord_side)
        .filter(|(c, _)| c.kind != ChordKind::DoubleMinus)
        .map(|(c, &s)| (c.vertex, s))
        .collect();
    Planarity::Planar {
        witness: PermissiblePartition { sides },
    }
}

/// Path from `from` to `to` in a forest, both ends included.
fn forest_path(forest: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; forest.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &forest[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = parent[x];
        path.push(x);
    }
    path.reverse();
    path
}

pub fn is_planar_of(a: &Analysis) -> Planarity {
    is_planar_diagram(&a.diagram)
}

/// Quadratic planarity decision with a witness or a conflict certificate.
pub fn is_planar(g: &StarGraph) -> Result<Planarity> {
    Ok(is_planar_of(&analyze(g)?))
}
