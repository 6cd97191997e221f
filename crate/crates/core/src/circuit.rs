//! Rotating-splitting Euler circuits.
//!
//! Under a source-sink orientation every vertex pairs each incoming half-edge
//! with an outgoing one (a transition). A transition system partitions the
//! edges into directed cycles. Starting from the all-rotating system, cycles
//! meeting at a vertex are merged by switching that vertex to another valid
//! local structure until a single cycle, the circuit, remains.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{slot_distance, EdgeId, Orientation, StarGraph, Topology, VertexId};

/// Local structure of the transitions at one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalStructure {
    /// Every transition turns between adjacent half-edges.
    Rotating,
    /// Degree 6, exactly one transition between opposite half-edges.
    Splitting,
    Invalid,
}

/// Classifies `(in_slot, out_slot)` transitions at a vertex of the given degree.
pub fn classify_local(degree: usize, pairs: &[(usize, usize)]) -> LocalStructure {
    if degree == 0 || !degree.is_multiple_of(2) || pairs.len() != degree / 2 {
        return LocalStructure::Invalid;
    }
    let mut used = vec![false; degree];
    for &(i, o) in pairs {
        if i >= degree || o >= degree || used[i] || used[o] || i == o {
            return LocalStructure::Invalid;
        }
        used[i] = true;
        used[o] = true;
    }
    let adjacent = pairs
        .iter()
        .filter(|&&(i, o)| slot_distance(degree, i, o) == 1)
        .count();
    let opposite = pairs
        .iter()
        .filter(|&&(i, o)| slot_distance(degree, i, o) == degree / 2)
        .count();
    if adjacent == pairs.len() {
        LocalStructure::Rotating
    } else if degree == 6 && opposite == 1 && adjacent == 2 {
        LocalStructure::Splitting
    } else {
        LocalStructure::Invalid
    }
}

/// Per vertex, a map from incoming slots to outgoing slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSystem {
    maps: BTreeMap<VertexId, Vec<Option<usize>>>,
}

impl TransitionSystem {
    /// Out-slot taken after arriving at `in_slot`.
    pub fn get(&self, v: VertexId, in_slot: usize) -> Option<usize> {
        self.maps.get(&v)?.get(in_slot).copied().flatten()
    }

    /// `(in, out)` pairs at a vertex, by ascending in-slot.
    pub fn pairs(&self, v: VertexId) -> Vec<(usize, usize)> {
        self.maps
            .get(&v)
            .map(|m| {
                m.iter()
                    .enumerate()
                    .filter_map(|(i, o)| o.map(|o| (i, o)))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.maps.keys().copied()
    }

    fn from_dense(t: &Topology, next: &[usize]) -> Self {
        let maps = (0..t.vertex_count())
            .map(|v| {
                let m = (0..t.degree(v))
                    .map(|s| {
                        let n = next[t.half_edge(v, s)];
                        (n != usize::MAX).then(|| t.slot_of(n))
                    })
                    .collect();
                (t.vertex_id(v), m)
            })
            .collect();
        Self { maps }
    }

    fn to_dense(&self, t: &Topology, out: &[bool]) -> Result<Vec<usize>> {
        let mut next = vec![usize::MAX; t.half_edge_count()];
        for v in 0..t.vertex_count() {
            for s in 0..t.degree(v) {
                let he = t.half_edge(v, s);
                if out[he] {
                    continue;
                }
                let o = self.get(t.vertex_id(v), s).ok_or_else(|| {
                    Error::Malformed(format!("no transition from {}.{s}", t.vertex_id(v)))
                })?;
                let target = t.half_edge(v, o);
                if o >= t.degree(v) || !out[target] {
                    return Err(Error::Malformed(format!(
                        "transition {}.{s} -> {o} does not end at an outgoing half-edge",
                        t.vertex_id(v)
                    )));
                }
                next[he] = target;
            }
        }
        Ok(next)
    }
}

/// Dense state shared by the circuit algorithms.
struct Walker<'a> {
    t: &'a Topology,
    out: Vec<bool>,
    // tail half-edge per edge
    tails: Vec<usize>,
    // incoming half-edge -> outgoing half-edge at the same vertex
    next: Vec<usize>,
}

impl<'a> Walker<'a> {
    fn new(t: &'a Topology, orientation: &Orientation) -> Result<Self> {
        let out = orientation.outgoing_mask(t);
        let tails = orientation.tails(t)?;
        for (e, &tail) in tails.iter().enumerate() {
            if !out[tail] || out[t.partner(tail)] {
                return Err(Error::Malformed(format!(
                    "edge {} is not oriented from an outgoing to an incoming end",
                    t.edge_id(e)
                )));
            }
        }
        for v in 0..t.vertex_count() {
            let d = t.degree(v);
            if (0..d).any(|s| out[t.half_edge(v, s)] == out[t.half_edge(v, s + 1)]) {
                return Err(Error::Malformed(format!(
                    "orientation does not alternate at vertex {}",
                    t.vertex_id(v)
                )));
            }
        }
        Ok(Self {
            t,
            out,
            tails,
            next: Vec::new(),
        })
    }

    fn canonical(&mut self) {
        let t = self.t;
        self.next = (0..t.half_edge_count())
            .map(|he| {
                if self.out[he] {
                    usize::MAX
                } else {
                    t.half_edge(t.vertex_of(he), t.slot_of(he) + 1)
                }
            })
            .collect();
    }

    /// Tail of the edge that follows the edge with tail `tail`.
    #[inline]
    fn step(&self, tail: usize) -> usize {
        self.next[self.t.partner(tail)]
    }

    /// Cycle label per edge and the number of cycles. Labels are assigned in
    /// order of each cycle's lowest edge.
    fn label(&self) -> (Vec<usize>, usize) {
        let t = self.t;
        let mut label = vec![usize::MAX; t.edge_count()];
        let mut count = 0;
        for start in 0..t.edge_count() {
            if label[start] != usize::MAX {
                continue;
            }
            let mut tail = self.tails[start];
            loop {
                label[t.edge_of(tail)] = count;
                tail = self.step(tail);
                if t.edge_of(tail) == start {
                    break;
                }
            }
            count += 1;
        }
        (label, count)
    }

    fn cycles(&self) -> Vec<Vec<EdgeId>> {
        let t = self.t;
        let mut seen = vec![false; t.edge_count()];
        let mut out = Vec::new();
        for start in 0..t.edge_count() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut tail = self.tails[start];
            loop {
                let e = t.edge_of(tail);
                seen[e] = true;
                cycle.push(t.edge_id(e));
                tail = self.step(tail);
                if t.edge_of(tail) == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    /// For each outgoing slot at `v`, the incoming slot at which the current
    /// cycle first returns to `v`.
    fn segments(&self, v: usize) -> Vec<(usize, usize)> {
        let t = self.t;
        (0..t.degree(v))
            .filter(|&s| self.out[t.half_edge(v, s)])
            .map(|s| {
                let mut tail = t.half_edge(v, s);
                loop {
                    let head = t.partner(tail);
                    if t.vertex_of(head) == v {
                        return (s, t.slot_of(head));
                    }
                    tail = self.next[head];
                }
            })
            .collect()
    }

    /// Number of cycles through `v` if its transitions were `map` (in -> out).
    fn cycles_through(segments: &[(usize, usize)], map: &[(usize, usize)]) -> usize {
        let target = |o: usize| {
            let i = segments.iter().find(|s| s.0 == o).unwrap().1;
            map.iter().find(|m| m.0 == i).unwrap().1
        };
        let mut seen: Vec<usize> = Vec::new();
        let mut count = 0;
        for &(o, _) in segments {
            if seen.contains(&o) {
                continue;
            }
            count += 1;
            let mut x = o;
            while !seen.contains(&x) {
                seen.push(x);
                x = target(x);
            }
        }
        count
    }

    fn local_pairs(&self, v: usize) -> Vec<(usize, usize)> {
        let t = self.t;
        (0..t.degree(v))
            .filter(|&s| !self.out[t.half_edge(v, s)])
            .map(|s| (s, t.slot_of(self.next[t.half_edge(v, s)])))
            .collect()
    }

    /// Valid local structures at `v`, in lexicographic order of the images of
    /// the in-slots taken in ascending order.
    fn candidates(&self, v: usize) -> Vec<Vec<(usize, usize)>> {
        let t = self.t;
        let d = t.degree(v);
        let ins: Vec<usize> = (0..d).filter(|&s| !self.out[t.half_edge(v, s)]).collect();
        let outs: Vec<usize> = (0..d).filter(|&s| self.out[t.half_edge(v, s)]).collect();
        permutations(&outs)
            .into_iter()
            .map(|p| ins.iter().copied().zip(p).collect::<Vec<_>>())
            .filter(|pairs| classify_local(d, pairs) != LocalStructure::Invalid)
            .collect()
    }

    fn merge_until_single(&mut self) -> Result<Vec<usize>> {
        let t = self.t;
        let mut history = Vec::new();
        loop {
            let (label, count) = self.label();
            history.push(count);
            if count <= 1 {
                return Ok(history);
            }
            let v = (0..t.vertex_count())
                .find(|&v| {
                    let first = label[t.edge_of(t.half_edge(v, 0))];
                    (1..t.degree(v)).any(|s| label[t.edge_of(t.half_edge(v, s))] != first)
                })
                .ok_or_else(|| {
                    Error::BrokenInvariant(format!("{count} cycles but no vertex joins two"))
                })?;
            let segments = self.segments(v);
            let now = Self::cycles_through(&segments, &self.local_pairs(v));
            let chosen = self
                .candidates(v)
                .into_iter()
                .find(|c| Self::cycles_through(&segments, c) < now)
                .ok_or_else(|| {
                    Error::BrokenInvariant(format!(
                        "no local structure at vertex {} merges its cycles",
                        t.vertex_id(v)
                    ))
                })?;
            for (i, o) in chosen {
                self.next[t.half_edge(v, i)] = t.half_edge(v, o);
            }
        }
    }

    fn circuit(&self) -> EulerCircuit {
        let t = self.t;
        let mut edges = Vec::with_capacity(t.edge_count());
        let mut visits = Vec::with_capacity(t.edge_count());
        let mut tail = self.tails[0];
        loop {
            let e = t.edge_of(tail);
            edges.push(t.edge_id(e));
            let head = t.partner(tail);
            let following = self.next[head];
            visits.push(Visit {
                vertex: t.vertex_id(t.vertex_of(head)),
                arrive: t.slot_of(head),
                depart: t.slot_of(following),
            });
            tail = following;
            if t.edge_of(tail) == 0 {
                break;
            }
        }
        // visit k sits at the start of edge k
        visits.rotate_right(1);
        EulerCircuit { edges, visits }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// The all-rotating system: incoming slot `i` continues to slot `i + 1`.
pub fn initial_transition_system(
    g: &StarGraph,
    orientation: &Orientation,
) -> Result<TransitionSystem> {
    let t = g.topology()?;
    let mut w = Walker::new(&t, orientation)?;
    w.canonical();
    Ok(TransitionSystem::from_dense(&t, &w.next))
}

/// Directed cycles of a transition system. Each cycle starts at its lowest
/// edge; cycles are listed by that edge.
pub fn cycles_of(
    g: &StarGraph,
    orientation: &Orientation,
    ts: &TransitionSystem,
) -> Result<Vec<Vec<EdgeId>>> {
    let t = g.topology()?;
    let mut w = Walker::new(&t, orientation)?;
    w.next = ts.to_dense(&t, &w.out)?;
    Ok(w.cycles())
}

/// A single closed walk through every edge once, following the orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCircuit {
    edges: Vec<EdgeId>,
    visits: Vec<Visit>,
}

/// A passage of the circuit through a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub vertex: VertexId,
    /// Slot of the incoming half-edge the circuit arrives on.
    pub arrive: usize,
    /// Slot of the outgoing half-edge it leaves on.
    pub depart: usize,
}

impl EulerCircuit {
    /// Edge ids in traversal order, starting with the lowest id.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Visit `k` is the passage at the tail of edge `k`, between edges
    /// `k - 1` and `k`.
    pub fn visits(&self) -> &[Visit] {
        &self.visits
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Circle positions of the visits to `v`, ascending.
    pub fn positions_of(&self, v: VertexId) -> Vec<usize> {
        (0..self.visits.len())
            .filter(|&k| self.visits[k].vertex == v)
            .collect()
    }

    /// [`Self::positions_of`] for every visited vertex at once.
    pub fn positions(&self) -> BTreeMap<VertexId, Vec<usize>> {
        let mut out: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (k, visit) in self.visits.iter().enumerate() {
            out.entry(visit.vertex).or_default().push(k);
        }
        out
    }
}

/// Builds a rotating-splitting circuit by merging cycles, starting from the
/// all-rotating system. Also returns the cycle count before each merge step
/// and after the last one.
pub fn find_rs_circuit_traced(
    g: &StarGraph,
    orientation: &Orientation,
) -> Result<(TransitionSystem, EulerCircuit, Vec<usize>)> {
    let t = g.topology()?;
    let mut w = Walker::new(&t, orientation)?;
    w.canonical();
    let history = w.merge_until_single()?;
    Ok((
        TransitionSystem::from_dense(&t, &w.next),
        w.circuit(),
        history,
    ))
}

pub fn find_rs_circuit(
    g: &StarGraph,
    orientation: &Orientation,
) -> Result<(TransitionSystem, EulerCircuit)> {
    find_rs_circuit_traced(g, orientation).map(|(ts, c, _)| (ts, c))
}

/// Checks that `circuit` is an Euler circuit consistent with `ts` and the
/// orientation, and that every vertex is rotating or splitting.
pub fn check_circuit(
    g: &StarGraph,
    orientation: &Orientation,
    ts: &TransitionSystem,
    circuit: &EulerCircuit,
) -> Result<()> {
    let t = g.topology()?;
    let bad = |msg: String| Err(Error::BrokenInvariant(msg));
    if circuit.edges.len() != t.edge_count() || circuit.visits.len() != t.edge_count() {
        return bad("circuit length differs from the edge count".into());
    }
    let mut used = vec![false; t.edge_count()];
    for &e in &circuit.edges {
        let Some(i) = t.edge_index(e) else {
            return bad(format!("unknown edge {e}"));
        };
        if std::mem::replace(&mut used[i], true) {
            return bad(format!("edge {e} traversed twice"));
        }
    }
    let m = circuit.edges.len();
    for k in 0..m {
        let (_, head) = orientation
            .direction(circuit.edges[(k + m - 1) % m])
            .unwrap();
        let (tail, _) = orientation.direction(circuit.edges[k]).unwrap();
        let visit = circuit.visits[k];
        if head.vertex != tail.vertex || visit.vertex != tail.vertex {
            return bad(format!(
                "circuit breaks between positions {} and {k}",
                (k + m - 1) % m
            ));
        }
        if visit.arrive != head.slot || visit.depart != tail.slot {
            return bad(format!("visit {k} does not match its edges"));
        }
        if ts.get(visit.vertex, visit.arrive) != Some(visit.depart) {
            return bad(format!("visit {k} disagrees with the transition system"));
        }
    }
    let positions = circuit.positions();
    for v in 0..t.vertex_count() {
        let id = t.vertex_id(v);
        let d = t.degree(v);
        let visits = positions.get(&id).map_or(0, Vec::len);
        if visits != d / 2 {
            return bad(format!("vertex {id} visited {visits} times"));
        }
        if classify_local(d, &ts.pairs(id)) == LocalStructure::Invalid {
            return bad(format!("vertex {id} is neither rotating nor splitting"));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rotation {
    Flat,
    Crossed,
}

/// How a circuit passes through a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    Rotating4,
    Rotating6(Rotation),
    /// `principal` is the circle position of the visit that passes between
    /// opposite half-edges.
    Splitting6 {
        principal: usize,
    },
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::Rotating4 => write!(f, "rotating4"),
            VertexClass::Rotating6(Rotation::Flat) => write!(f, "rotating6-flat"),
            VertexClass::Rotating6(Rotation::Crossed) => write!(f, "rotating6-crossed"),
            VertexClass::Splitting6 { principal } => write!(f, "splitting6@{principal}"),
        }
    }
}

/// Classifies every vertex. A rotating 6-vertex is flat when each arc of the
/// circuit between consecutive visits leaves and returns on adjacent
/// half-edges, crossed when it does so on opposite ones.
pub fn classify_vertices(
    g: &StarGraph,
    circuit: &EulerCircuit,
) -> Result<BTreeMap<VertexId, VertexClass>> {
    let mut out = BTreeMap::new();
    let all = circuit.positions();
    for (v, d) in g.vertices() {
        let pos = all.get(&v).cloned().unwrap_or_default();
        if pos.len() != d / 2 {
            return Err(Error::BrokenInvariant(format!(
                "vertex {v} visited {} times",
                pos.len()
            )));
        }
        let visits: Vec<Visit> = pos.iter().map(|&k| circuit.visits[k]).collect();
        let dist: Vec<usize> = visits
            .iter()
            .map(|x| slot_distance(d, x.arrive, x.depart))
            .collect();
        let class = match (d, dist.iter().filter(|&&x| x == d / 2).count()) {
            (4, _) if dist.iter().all(|&x| x == 1) => VertexClass::Rotating4,
            (6, 0) if dist.iter().all(|&x| x == 1) => {
                let arcs: Vec<usize> = (0..3)
                    .map(|i| slot_distance(6, visits[i].depart, visits[(i + 1) % 3].arrive))
                    .collect();
                match arcs.as_slice() {
                    [1, 1, 1] => VertexClass::Rotating6(Rotation::Flat),
                    [3, 3, 3] => VertexClass::Rotating6(Rotation::Crossed),
                    _ => {
                        return Err(Error::BrokenInvariant(format!(
                            "rotating vertex {v} is neither flat nor crossed (arcs {arcs:?})"
                        )))
                    }
                }
            }
            (6, 1) => {
                let i = dist.iter().position(|&x| x == 3).unwrap();
                VertexClass::Splitting6 { principal: pos[i] }
            }
            _ => {
                return Err(Error::BrokenInvariant(format!(
                    "vertex {v} is neither rotating nor splitting"
                )))
            }
        };
        out.insert(v, class);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::find_source_sink_orientation;

    fn setup(g: &StarGraph) -> Orientation {
        find_source_sink_orientation(g).unwrap()
    }

    #[test]
    fn local_classification() {
        assert_eq!(
            classify_local(4, &[(1, 0), (3, 2)]),
            LocalStructure::Rotating
        );
        assert_eq!(
            classify_local(6, &[(1, 4), (3, 2), (5, 0)]),
            LocalStructure::Splitting
        );
        assert_eq!(
            classify_local(6, &[(1, 4), (3, 0), (5, 2)]),
            LocalStructure::Invalid
        );
        assert_eq!(
            classify_local(6, &[(1, 2), (3, 4), (5, 0)]),
            LocalStructure::Rotating
        );
        assert_eq!(classify_local(4, &[(1, 0)]), LocalStructure::Invalid);
        assert_eq!(
            classify_local(4, &[(1, 0), (1, 2)]),
            LocalStructure::Invalid
        );
    }

    #[test]
    fn degree_six_structure_counts() {
        // 2 rotating, 3 splitting, 1 invalid among the 3! bijections
        let perms = permutations(&[0, 2, 4]);
        let kinds: Vec<_> = perms
            .iter()
            .map(|p| classify_local(6, &[(1, p[0]), (3, p[1]), (5, p[2])]))
            .collect();
        assert_eq!(
            kinds
                .iter()
                .filter(|k| **k == LocalStructure::Rotating)
                .count(),
            2
        );
        assert_eq!(
            kinds
                .iter()
                .filter(|k| **k == LocalStructure::Splitting)
                .count(),
            3
        );
        assert_eq!(
            kinds
                .iter()
                .filter(|k| **k == LocalStructure::Invalid)
                .count(),
            1
        );
        assert_eq!(perms[0], vec![0, 2, 4]);
        assert_eq!(perms[5], vec![4, 2, 0]);
    }

    #[test]
    fn canonical_systems() {
        let g = fixtures::g8();
        let ts = initial_transition_system(&g, &setup(&g)).unwrap();
        assert_eq!(ts.pairs(0), vec![(1, 2), (3, 0)]);

        let g = fixtures::gt3f();
        let ts = initial_transition_system(&g, &setup(&g)).unwrap();
        assert_eq!(ts.pairs(0), vec![(1, 2), (3, 4), (5, 0)]);

        let g = fixtures::ghopf();
        let ts = initial_transition_system(&g, &setup(&g)).unwrap();
        assert_eq!(ts.pairs(0), vec![(1, 2), (3, 0)]);
        assert_eq!(ts.pairs(1), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn canonical_cycles() {
        let cases: [(StarGraph, Vec<usize>); 4] = [
            (fixtures::g8(), vec![2]),
            (fixtures::gt3c(), vec![3]),
            // the three loops chain through slots 1->2, 3->4, 5->0
            (fixtures::gt3f(), vec![3]),
            (fixtures::chain(4), vec![4, 4]),
        ];
        for (g, lens) in cases {
            let o = setup(&g);
            let ts = initial_transition_system(&g, &o).unwrap();
            let cycles = cycles_of(&g, &o, &ts).unwrap();
            assert_eq!(cycles.iter().map(Vec::len).collect::<Vec<_>>(), lens);
        }
    }

    #[test]
    fn gt3c_cycle_order() {
        let g = fixtures::gt3c();
        let o = setup(&g);
        let ts = initial_transition_system(&g, &o).unwrap();
        assert_eq!(cycles_of(&g, &o, &ts).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn fixture_circuits() {
        let g = fixtures::g8();
        let o = setup(&g);
        let (ts, c) = find_rs_circuit(&g, &o).unwrap();
        check_circuit(&g, &o, &ts, &c).unwrap();
        assert_eq!(c.edges(), &[0, 1]);
        assert_eq!(
            classify_vertices(&g, &c).unwrap()[&0],
            VertexClass::Rotating4
        );

        let g = fixtures::gt3f();
        let (_, c) = find_rs_circuit(&g, &setup(&g)).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(
            classify_vertices(&g, &c).unwrap()[&0],
            VertexClass::Rotating6(Rotation::Flat)
        );

        let g = fixtures::gt3c();
        let (_, c) = find_rs_circuit(&g, &setup(&g)).unwrap();
        assert_eq!(
            classify_vertices(&g, &c).unwrap()[&0],
            VertexClass::Rotating6(Rotation::Crossed)
        );

        let g = fixtures::ghopf();
        let o = setup(&g);
        let (_, c, history) = find_rs_circuit_traced(&g, &o).unwrap();
        assert_eq!(history, vec![1]);
        assert_eq!(c.edges(), &[0, 1, 2, 3]);
        let order: Vec<VertexId> = c.visits().iter().map(|v| v.vertex).collect();
        assert_eq!(order, vec![0, 1, 0, 1]);
        let classes = classify_vertices(&g, &c).unwrap();
        assert!(classes.values().all(|&k| k == VertexClass::Rotating4));
    }

    #[test]
    fn chain_needs_one_merge() {
        let g = fixtures::chain(6);
        let o = setup(&g);
        let (ts, c, history) = find_rs_circuit_traced(&g, &o).unwrap();
        assert_eq!(history, vec![2, 1]);
        check_circuit(&g, &o, &ts, &c).unwrap();
    }

    #[test]
    fn splitting_vertex_arises_from_two_cycle_merge() {
        // 6-vertex whose canonical system gives two cycles: loops (0,1) and
        // (2,5), (4,3). Merging at a rotating vertex with two cycles must make
        // it splitting.
        let mut g = StarGraph::new();
        g.insert_vertex(0, 6);
        for (i, (a, b)) in [(0, 1), (2, 5), (4, 3)].into_iter().enumerate() {
            g.insert_edge(
                i as u64,
                crate::graph::HalfEdgeRef::new(0, a),
                crate::graph::HalfEdgeRef::new(0, b),
            );
        }
        let o = setup(&g);
        let (ts, c, history) = find_rs_circuit_traced(&g, &o).unwrap();
        assert_eq!(history, vec![2, 1]);
        check_circuit(&g, &o, &ts, &c).unwrap();
        assert!(matches!(
            classify_vertices(&g, &c).unwrap()[&0],
            VertexClass::Splitting6 { .. }
        ));
    }

    #[test]
    fn rejects_non_alternating_orientation() {
        let g = fixtures::g8();
        let other = find_source_sink_orientation(&fixtures::ghopf()).unwrap();
        assert!(find_rs_circuit(&g, &other).is_err());
    }

    #[test]
    fn display_classes() {
        assert_eq!(
            VertexClass::Splitting6 { principal: 4 }.to_string(),
            "splitting6@4"
        );
        assert_eq!(
            VertexClass::Rotating6(Rotation::Crossed).to_string(),
            "rotating6-crossed"
        );
    }
}
