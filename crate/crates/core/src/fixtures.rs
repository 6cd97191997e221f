//! Named test graphs, benchmark chains, seeded random graphs and the
//! exhaustive corpus of small graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{
    components, double_cover, find_source_sink_orientation, validate, HalfEdgeRef, StarGraph,
    VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}` (expected g8, gx, ghopf, gt3f, gt3c, chain(k), random(seed, n4, n6), random-ss(seed, n4, n6))")]
    Unknown(String),
    #[error("bad fixture arguments in `{0}`")]
    BadArguments(String),
    #[error("no connected graph with {n4} 4-vertices and {n6} 6-vertices")]
    Infeasible { n4: usize, n6: usize },
}

fn h(v: VertexId, s: usize) -> HalfEdgeRef {
    HalfEdgeRef::new(v, s)
}

fn single_vertex(degree: usize, pairs: &[(usize, usize)]) -> StarGraph {
    let mut g = StarGraph::new();
    g.insert_vertex(0, degree);
    for (i, &(a, b)) in pairs.iter().enumerate() {
        g.insert_edge(i as u64, h(0, a), h(0, b));
    }
    g
}

/// One 4-vertex with loops at slots (0,1) and (2,3).
pub fn g8() -> StarGraph {
    single_vertex(4, &[(0, 1), (2, 3)])
}

/// One 4-vertex with loops at slots (0,2) and (1,3); not source-sink.
pub fn gx() -> StarGraph {
    single_vertex(4, &[(0, 2), (1, 3)])
}

/// Two 4-vertices `u = 0`, `v = 1` joined by four edges.
pub fn ghopf() -> StarGraph {
    let mut g = StarGraph::new();
    g.insert_vertex(0, 4);
    g.insert_vertex(1, 4);
    for (i, (a, b)) in [
        (h(0, 0), h(1, 2)),
        (h(1, 3), h(0, 1)),
        (h(0, 2), h(1, 0)),
        (h(1, 1), h(0, 3)),
    ]
    .into_iter()
    .enumerate()
    {
        g.insert_edge(i as u64, a, b);
    }
    g
}

/// One 6-vertex with loops (0,1), (2,3), (4,5).
pub fn gt3f() -> StarGraph {
    single_vertex(6, &[(0, 1), (2, 3), (4, 5)])
}

/// One 6-vertex with loops (0,3), (1,4), (2,5).
pub fn gt3c() -> StarGraph {
    single_vertex(6, &[(0, 3), (1, 4), (2, 5)])
}

/// `k` 4-vertices in a ring, consecutive vertices joined by an outer and an
/// inner edge. Planar and source-sink for every `k >= 1`.
pub fn chain(k: usize) -> StarGraph {
    let mut g = StarGraph::new();
    for v in 0..k as u64 {
        g.insert_vertex(v, 4);
    }
    // slots: 0 outer-next, 1 inner-next, 2 inner-prev, 3 outer-prev
    for i in 0..k as u64 {
        let next = (i + 1) % k as u64;
        g.insert_edge(2 * i, h(i, 0), h(next, 3));
        g.insert_edge(2 * i + 1, h(i, 1), h(next, 2));
    }
    g
}

fn degrees(n4: usize, n6: usize) -> Result<Vec<usize>, FixtureError> {
    if n4 + n6 == 0 {
        return Err(FixtureError::Infeasible { n4, n6 });
    }
    Ok(std::iter::repeat_n(4, n4)
        .chain(std::iter::repeat_n(6, n6))
        .collect())
}

fn assemble(degrees: &[usize], pairs: &[(HalfEdgeRef, HalfEdgeRef)]) -> StarGraph {
    let mut g = StarGraph::new();
    for (v, &d) in degrees.iter().enumerate() {
        g.insert_vertex(v as u64, d);
    }
    for (i, &(a, b)) in pairs.iter().enumerate() {
        g.insert_edge(i as u64, a, b);
    }
    g
}

/// Joins components by 2-switches: `(a,b), (c,d) -> (a,d), (c,b)` with the
/// two edges taken from different components. Every vertex has even degree,
/// so no edge is a bridge and each switch merges two components.
fn connect(degrees: &[usize], pairs: &mut [(HalfEdgeRef, HalfEdgeRef)]) {
    loop {
        let g = assemble(degrees, pairs);
        let parts = components(&g);
        if parts.len() <= 1 {
            return;
        }
        let first_of = |part: &StarGraph| {
            let (v, _) = part.vertices().next().unwrap();
            pairs
                .iter()
                .position(|(a, b)| a.vertex == v || b.vertex == v)
                .unwrap()
        };
        let i = first_of(&parts[0]);
        let j = first_of(&parts[1]);
        let (a, b) = pairs[i];
        let (c, d) = pairs[j];
        pairs[i] = (a, d);
        pairs[j] = (c, b);
    }
}

/// A connected *-graph with a uniformly random pairing of half-edges. Vertices
/// `0..n4` have degree 4, the rest degree 6.
pub fn random(seed: u64, n4: usize, n6: usize) -> Result<StarGraph, FixtureError> {
    let degrees = degrees(n4, n6)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ends: Vec<HalfEdgeRef> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| (0..d).map(move |s| h(v as u64, s)))
        .collect();
    ends.shuffle(&mut rng);
    let mut pairs: Vec<_> = ends.chunks(2).map(|c| (c[0], c[1])).collect();
    connect(&degrees, &mut pairs);
    Ok(assemble(&degrees, &pairs))
}

/// Like [`random`] but always source-sink: each vertex gets a random phase and
/// outgoing half-edges are matched to incoming ones.
pub fn random_source_sink(seed: u64, n4: usize, n6: usize) -> Result<StarGraph, FixtureError> {
    let degrees = degrees(n4, n6)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outs = Vec::new();
    let mut ins = Vec::new();
    for (v, &d) in degrees.iter().enumerate() {
        let phase = rng.gen_range(0..2);
        for s in 0..d {
            if s % 2 == phase {
                outs.push(h(v as u64, s));
            } else {
                ins.push(h(v as u64, s));
            }
        }
    }
    ins.shuffle(&mut rng);
    let mut pairs: Vec<_> = outs.into_iter().zip(ins).collect();
    connect(&degrees, &mut pairs);
    Ok(assemble(&degrees, &pairs))
}

/// Every valid connected *-graph on vertex set `{0}` or `{0, 1}`, over all
/// degree assignments and all pairings of half-edges. Edge ids follow the
/// pairing order.
pub fn exhaustive_two_vertex() -> Vec<StarGraph> {
    let mut out = Vec::new();
    let shapes: [&[usize]; 6] = [&[4], &[6], &[4, 4], &[4, 6], &[6, 4], &[6, 6]];
    for degs in shapes {
        let ends: Vec<HalfEdgeRef> = degs
            .iter()
            .enumerate()
            .flat_map(|(v, &d)| (0..d).map(move |s| h(v as u64, s)))
            .collect();
        for pairs in matchings(&ends) {
            let g = assemble(degs, &pairs);
            if validate(&g).is_empty() {
                out.push(g);
            }
        }
    }
    out
}

/// `count` seeded source-sink graphs with 1 to `max_vertices` vertices of
/// mixed degree. Every fourth graph is the double cover of a random graph
/// that is not source-sink, which exercises the cover on arbitrary input.
pub fn random_corpus(count: usize, max_vertices: usize) -> Vec<StarGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let seed = rng.gen::<u64>();
        if out.len() % 4 == 3 && max_vertices >= 2 {
            let n = rng.gen_range(1..=max_vertices / 2);
            let n4 = rng.gen_range(0..=n);
            let g = random(seed, n4, n - n4).expect("n >= 1");
            if find_source_sink_orientation(&g).is_err() {
                out.push(double_cover(&g).expect("valid input"));
            }
        } else {
            let n = rng.gen_range(1..=max_vertices);
            let n4 = rng.gen_range(0..=n);
            out.push(random_source_sink(seed, n4, n - n4).expect("n >= 1"));
        }
    }
    out
}

fn matchings(ends: &[HalfEdgeRef]) -> Vec<Vec<(HalfEdgeRef, HalfEdgeRef)>> {
    fn go(
        rest: &mut Vec<HalfEdgeRef>,
        acc: &mut Vec<(HalfEdgeRef, HalfEdgeRef)>,
        out: &mut Vec<Vec<(HalfEdgeRef, HalfEdgeRef)>>,
    ) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        let first = rest.remove(0);
        for i in 0..rest.len() {
            let other = rest.remove(i);
            acc.push((first, other));
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, other);
        }
        rest.insert(0, first);
    }
    let mut out = Vec::new();
    go(&mut ends.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn args(name: &str, inner: &str, n: usize) -> Result<Vec<u64>, FixtureError> {
    let parsed: Result<Vec<u64>, _> = inner.split(',').map(|t| t.trim().parse()).collect();
    match parsed {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(FixtureError::BadArguments(name.to_string())),
    }
}

/// Resolves a fixture name such as `g8`, `chain(3)` or `random(7, 4, 2)`.
pub fn by_name(name: &str) -> Result<StarGraph, FixtureError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, inner) = match compact.split_once('(') {
        Some((head, rest)) => match rest.strip_suffix(')') {
            Some(inner) => (head, Some(inner)),
            None => return Err(FixtureError::BadArguments(name.to_string())),
        },
        None => (compact.as_str(), None),
    };
    match (head, inner) {
        ("g8", None) => Ok(g8()),
        ("gx", None) => Ok(gx()),
        ("ghopf", None) => Ok(ghopf()),
        ("gt3f", None) => Ok(gt3f()),
        ("gt3c", None) => Ok(gt3c()),
        ("chain", Some(a)) => {
            let k = args(name, a, 1)?[0] as usize;
            if k == 0 {
                return Err(FixtureError::Infeasible { n4: 0, n6: 0 });
            }
            Ok(chain(k))
        }
        ("random", Some(a)) => {
            let v = args(name, a, 3)?;
            random(v[0], v[1] as usize, v[2] as usize)
        }
        ("random-ss", Some(a)) => {
            let v = args(name, a, 3)?;
            random_source_sink(v[0], v[1] as usize, v[2] as usize)
        }
        _ => Err(FixtureError::Unknown(name.to_string())),
    }
}
