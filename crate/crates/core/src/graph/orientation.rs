//! Source-sink orientations and the parity double cover.
//!
//! Each vertex gets a phase bit; slot `i` is outgoing iff `i mod 2 == phase`.
//! An edge between slots `i` and `j` needs exactly one outgoing end, which
//! forces the phases of its endpoints to differ iff `i` and `j` have equal
//! parity. The condition is solvable iff this parity system is consistent.

use std::collections::BTreeMap;

use super::{EdgeId, HalfEdgeRef, StarGraph, Topology, VertexId};
use crate::error::{Error, Result};
use crate::parity::{ParityUnionFind, Relation};

/// An edge orientation in which in/out alternates around every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    phases: BTreeMap<VertexId, bool>,
    directions: BTreeMap<EdgeId, (HalfEdgeRef, HalfEdgeRef)>,
}

impl Orientation {
    /// `false` means the even slots of the vertex are outgoing.
    pub fn phase(&self, v: VertexId) -> Option<bool> {
        self.phases.get(&v).copied()
    }

    pub fn is_outgoing(&self, h: HalfEdgeRef) -> bool {
        (h.slot % 2 == 1) == self.phases[&h.vertex]
    }

    /// `(tail, head)` of an edge.
    pub fn direction(&self, e: EdgeId) -> Option<(HalfEdgeRef, HalfEdgeRef)> {
        self.directions.get(&e).copied()
    }

    pub fn directions(&self) -> impl Iterator<Item = (EdgeId, HalfEdgeRef, HalfEdgeRef)> + '_ {
        self.directions.iter().map(|(&e, &(t, h))| (e, t, h))
    }

    /// Outgoing flag per dense half-edge of `t`.
    pub(crate) fn outgoing_mask(&self, t: &Topology) -> Vec<bool> {
        (0..t.half_edge_count())
            .map(|he| self.is_outgoing(t.half_edge_ref(he)))
            .collect()
    }

    /// Tail half-edge per dense edge of `t`.
    pub(crate) fn tails(&self, t: &Topology) -> Result<Vec<usize>> {
        (0..t.edge_count())
            .map(|e| {
                let (tail, _) = self.direction(t.edge_id(e)).ok_or_else(|| {
                    Error::Malformed(format!("orientation lacks edge {}", t.edge_id(e)))
                })?;
                t.half_edge_of(tail).ok_or_else(|| {
                    Error::Malformed(format!("orientation references unknown half-edge {tail}"))
                })
            })
            .collect()
    }
}

/// Whether the ends of an edge at slots `i` and `j` force different phases.
fn phases_differ(i: usize, j: usize) -> bool {
    i % 2 == j % 2
}

/// Finds the alternating orientation in which slot 0 of the lowest vertex is
/// outgoing, or reports that none exists.
pub fn find_source_sink_orientation(g: &StarGraph) -> Result<Orientation> {
    let t = g.topology()?;
    let mut uf = ParityUnionFind::new(t.vertex_count());
    for e in 0..t.edge_count() {
        let [a, b] = t.edge_ends(e);
        let differ = phases_differ(t.slot_of(a), t.slot_of(b));
        if uf.relate(t.vertex_of(a), t.vertex_of(b), differ) == Relation::Conflict {
            return Err(Error::NotSourceSink);
        }
    }
    let (_, base) = uf.find(0);
    let phases: BTreeMap<VertexId, bool> = (0..t.vertex_count())
        .map(|v| (t.vertex_id(v), uf.find(v).1 ^ base))
        .collect();

    let mut directions = BTreeMap::new();
    for (e, [a, b]) in g.edges() {
        let a_out = (a.slot % 2 == 1) == phases[&a.vertex];
        directions.insert(e, if a_out { (a, b) } else { (b, a) });
    }
    Ok(Orientation { phases, directions })
}

/// Parity double cover: vertex `v` lifts to `2v` and `2v + 1`, edge `e` to
/// `2e` and `2e + 1`. An edge whose ends must have equal phases lifts within
/// each layer; one whose ends must differ lifts across layers. Phase = layer
/// is then an alternating orientation of the cover.
pub fn double_cover(g: &StarGraph) -> Result<StarGraph> {
    g.topology()?;
    let lift = |id: u64, layer: u64| {
        id.checked_mul(2)
            .and_then(|x| x.checked_add(layer))
            .ok_or(Error::IdOverflow(id))
    };
    let mut cover = StarGraph::new();
    for (v, d) in g.vertices() {
        for layer in 0..2 {
            cover.insert_vertex(lift(v, layer)?, d);
        }
    }
    for (e, [a, b]) in g.edges() {
        let cross = phases_differ(a.slot, b.slot) as u64;
        for layer in 0..2 {
            let ta = HalfEdgeRef::new(lift(a.vertex, layer)?, a.slot);
            let tb = HalfEdgeRef::new(lift(b.vertex, layer ^ cross)?, b.slot);
            cover.insert_edge(lift(e, layer)?, ta, tb);
        }
    }
    Ok(cover)
}
