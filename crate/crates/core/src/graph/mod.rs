//! *-graphs: graphs whose half-edges at each vertex carry a cyclic order.
//!
//! A half-edge is addressed by `(vertex, slot)` where the slot is its position
//! in the cyclic order at that vertex. Two half-edges are adjacent when their
//! slots differ by one modulo the degree, and opposite when they differ by half
//! the degree. Only degrees 4 and 6 are admitted.

mod format;
mod orientation;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub use format::{parse_stg, to_stg, ParseError};
pub use orientation::{double_cover, find_source_sink_orientation, Orientation};

pub type VertexId = u64;
pub type EdgeId = u64;

/// One end of an edge: a slot in the cyclic order at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdgeRef {
    pub vertex: VertexId,
    pub slot: usize,
}

impl HalfEdgeRef {
    pub fn new(vertex: VertexId, slot: usize) -> Self {
        Self { vertex, slot }
    }
}

impl fmt::Display for HalfEdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.vertex, self.slot)
    }
}

/// A pair of cyclically adjacent half-edges `(first, first + 1 mod degree)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle {
    pub vertex: VertexId,
    pub first: usize,
    pub degree: usize,
}

impl Angle {
    pub fn slots(&self) -> (usize, usize) {
        (self.first, (self.first + 1) % self.degree)
    }

    /// Angles alternate between class 0 and class 1 around a vertex; the
    /// angle `(0, 1)` is class 0.
    pub fn class(&self) -> usize {
        self.first % 2
    }

    /// The angle spanned by two adjacent slots, if they are adjacent.
    pub fn between(vertex: VertexId, degree: usize, a: usize, b: usize) -> Option<Angle> {
        if (a + 1) % degree == b {
            Some(Angle {
                vertex,
                first: a,
                degree,
            })
        } else if (b + 1) % degree == a {
            Some(Angle {
                vertex,
                first: b,
                degree,
            })
        } else {
            None
        }
    }
}

/// Cyclic distance between two slots at a vertex of the given degree.
pub fn slot_distance(degree: usize, a: usize, b: usize) -> usize {
    let d = a.abs_diff(b) % degree;
    d.min(degree - d)
}

/// A *-graph. Loops and parallel edges are allowed.
///
/// The structure holds whatever it was built from; [`validate`] reports
/// whether it is a well-formed *-graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StarGraph {
    vertices: BTreeMap<VertexId, usize>,
    edges: BTreeMap<EdgeId, [HalfEdgeRef; 2]>,
}

impl StarGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex; returns `false` if the id is already taken.
    pub fn insert_vertex(&mut self, id: VertexId, degree: usize) -> bool {
        if self.vertices.contains_key(&id) {
            return false;
        }
        self.vertices.insert(id, degree);
        true
    }

    /// Adds an edge; returns `false` if the id is already taken.
    pub fn insert_edge(&mut self, id: EdgeId, a: HalfEdgeRef, b: HalfEdgeRef) -> bool {
        if self.edges.contains_key(&id) {
            return false;
        }
        self.edges.insert(id, [a, b]);
        true
    }

    pub fn degree(&self, v: VertexId) -> Option<usize> {
        self.vertices.get(&v).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, usize)> + '_ {
        self.vertices.iter().map(|(&v, &d)| (v, d))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [HalfEdgeRef; 2])> + '_ {
        self.edges.iter().map(|(&e, &ends)| (e, ends))
    }

    pub fn edge(&self, id: EdgeId) -> Option<[HalfEdgeRef; 2]> {
        self.edges.get(&id).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Validates and builds the dense index used by the algorithms.
    pub fn topology(&self) -> Result<Topology> {
        let violations = validate(self);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(Topology::build(self))
    }
}

/// A reason a [`StarGraph`] is not a valid connected *-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    BadDegree { vertex: VertexId, degree: usize },
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    SlotOutOfRange { edge: EdgeId, end: HalfEdgeRef },
    SlotCoveredTwice(HalfEdgeRef),
    SlotUncovered(HalfEdgeRef),
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "graph has no vertices"),
            Violation::BadDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} (expected 4 or 6)")
            }
            Violation::UnknownVertex { edge, vertex } => {
                write!(f, "edge {edge} references unknown vertex {vertex}")
            }
            Violation::SlotOutOfRange { edge, end } => {
                write!(f, "edge {edge} uses slot {end} outside the vertex degree")
            }
            Violation::SlotCoveredTwice(h) => write!(f, "slot {h} covered twice"),
            Violation::SlotUncovered(h) => write!(f, "slot {h} not covered"),
            Violation::Disconnected { components } => {
                write!(f, "disconnected ({components} components)")
            }
        }
    }
}

/// Checks every *-graph invariant. An empty list means the graph is valid.
pub fn validate(g: &StarGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    if g.vertices.is_empty() {
        out.push(Violation::NoVertices);
    }
    for (&v, &d) in &g.vertices {
        if d != 4 && d != 6 {
            out.push(Violation::BadDegree {
                vertex: v,
                degree: d,
            });
        }
    }

    let mut seen: BTreeSet<HalfEdgeRef> = BTreeSet::new();
    let mut twice: BTreeSet<HalfEdgeRef> = BTreeSet::new();
    let mut dangling = false;
    for (&e, ends) in &g.edges {
        for &h in ends {
            match g.vertices.get(&h.vertex) {
                None => {
                    out.push(Violation::UnknownVertex {
                        edge: e,
                        vertex: h.vertex,
                    });
                    dangling = true;
                }
                Some(&d) if h.slot >= d => {
                    out.push(Violation::SlotOutOfRange { edge: e, end: h });
                }
                Some(_) => {
                    if !seen.insert(h) {
                        twice.insert(h);
                    }
                }
            }
        }
    }
    out.extend(twice.into_iter().map(Violation::SlotCoveredTwice));
    for (&v, &d) in &g.vertices {
        for slot in 0..d {
            let h = HalfEdgeRef::new(v, slot);
            if !seen.contains(&h) {
                out.push(Violation::SlotUncovered(h));
            }
        }
    }

    if !dangling && !g.vertices.is_empty() {
        let parts = components_of(g).len();
        if parts > 1 {
            out.push(Violation::Disconnected { components: parts });
        }
    }
    out
}

fn components_of(g: &StarGraph) -> Vec<Vec<VertexId>> {
    let ids: Vec<VertexId> = g.vertices.keys().copied().collect();
    let index = |v: VertexId| ids.binary_search(&v).ok();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for ends in g.edges.values() {
        if let (Some(a), Some(b)) = (index(ends[0].vertex), index(ends[1].vertex)) {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for (i, &v) in ids.iter().enumerate() {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

/// Splits a graph into its connected components, keeping ids.
pub fn components(g: &StarGraph) -> Vec<StarGraph> {
    components_of(g)
        .into_iter()
        .map(|vs| {
            let keep: BTreeSet<VertexId> = vs.iter().copied().collect();
            let mut part = StarGraph::new();
            for &v in &vs {
                part.insert_vertex(v, g.vertices[&v]);
            }
            for (&e, ends) in &g.edges {
                if keep.contains(&ends[0].vertex) {
                    part.insert_edge(e, ends[0], ends[1]);
                }
            }
            part
        })
        .collect()
}

/// Dense, index-based view of a valid *-graph.
///
/// Vertices and edges are numbered in ascending id order. Half-edges are
/// numbered consecutively per vertex: half-edge `offset[v] + slot`.
#[derive(Clone, Debug)]
pub struct Topology {
    vertex_ids: Vec<VertexId>,
    degrees: Vec<usize>,
    offsets: Vec<usize>,
    he_vertex: Vec<usize>,
    he_edge: Vec<usize>,
    he_partner: Vec<usize>,
    edge_ids: Vec<EdgeId>,
    edge_ends: Vec<[usize; 2]>,
}

impl Topology {
    fn build(g: &StarGraph) -> Self {
        let vertex_ids: Vec<VertexId> = g.vertices.keys().copied().collect();
        let degrees: Vec<usize> = g.vertices.values().copied().collect();
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut he_vertex = Vec::new();
        for (v, &d) in degrees.iter().enumerate() {
            offsets.push(he_vertex.len());
            he_vertex.extend(std::iter::repeat_n(v, d));
        }
        let total = he_vertex.len();
        let mut t = Topology {
            vertex_ids,
            degrees,
            offsets,
            he_vertex,
            he_edge: vec![usize::MAX; total],
            he_partner: vec![usize::MAX; total],
            edge_ids: Vec::with_capacity(g.edges.len()),
            edge_ends: Vec::with_capacity(g.edges.len()),
        };
        for (i, (&e, ends)) in g.edges.iter().enumerate() {
            let a = t.half_edge_of(ends[0]).expect("validated");
            let b = t.half_edge_of(ends[1]).expect("validated");
            t.he_edge[a] = i;
            t.he_edge[b] = i;
            t.he_partner[a] = b;
            t.he_partner[b] = a;
            t.edge_ids.push(e);
            t.edge_ends.push([a, b]);
        }
        t
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.he_vertex.len()
    }

    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.vertex_ids
    }

    pub fn vertex_id(&self, v: usize) -> VertexId {
        self.vertex_ids[v]
    }

    pub fn vertex_index(&self, id: VertexId) -> Option<usize> {
        self.vertex_ids.binary_search(&id).ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn edge_id(&self, e: usize) -> EdgeId {
        self.edge_ids[e]
    }

    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edge_ids.binary_search(&id).ok()
    }

    /// The two half-edges of edge `e`, in the order they were declared.
    pub fn edge_ends(&self, e: usize) -> [usize; 2] {
        self.edge_ends[e]
    }

    pub fn half_edge(&self, v: usize, slot: usize) -> usize {
        self.offsets[v] + slot % self.degrees[v]
    }

    pub fn half_edge_of(&self, h: HalfEdgeRef) -> Option<usize> {
        let v = self.vertex_index(h.vertex)?;
        (h.slot < self.degrees[v]).then(|| self.offsets[v] + h.slot)
    }

    pub fn vertex_of(&self, he: usize) -> usize {
        self.he_vertex[he]
    }

    pub fn slot_of(&self, he: usize) -> usize {
        he - self.offsets[self.he_vertex[he]]
    }

    pub fn edge_of(&self, he: usize) -> usize {
        self.he_edge[he]
    }

    pub fn partner(&self, he: usize) -> usize {
        self.he_partner[he]
    }

    pub fn half_edge_ref(&self, he: usize) -> HalfEdgeRef {
        HalfEdgeRef::new(self.vertex_id(self.vertex_of(he)), self.slot_of(he))
    }
}
