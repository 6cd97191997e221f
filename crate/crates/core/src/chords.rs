//! Chord diagrams read off an Euler circuit.
//!
//! The circuit is a circle whose points are its visits. A 4-vertex contributes
//! a chord between its two visits; a rotating 6-vertex a triad on its three
//! visits, flat or crossed; a splitting 6-vertex a double chord from its
//! principal visit to the other two. Expansion turns triads and double chords
//! into pairs of ordinary chords by doubling one point into `p-`, `p+`.

use std::collections::BTreeMap;
use std::fmt;

use crate::circuit::{EulerCircuit, Rotation, VertexClass};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::VertexId;

/// Structure attached to circle points, all point lists in circle order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Attachment {
    Chord {
        vertex: VertexId,
        points: [usize; 2],
    },
    Triad {
        vertex: VertexId,
        points: [usize; 3],
        rotation: Rotation,
    },
    /// `others` are listed in circle order starting after `principal`.
    DoubleChord {
        vertex: VertexId,
        principal: usize,
        others: [usize; 2],
    },
}

impl Attachment {
    pub fn vertex(&self) -> VertexId {
        match *self {
            Attachment::Chord { vertex, .. }
            | Attachment::Triad { vertex, .. }
            | Attachment::DoubleChord { vertex, .. } => vertex,
        }
    }

    fn first_point(&self) -> usize {
        match *self {
            Attachment::Chord { points, .. } => points[0],
            Attachment::Triad { points, .. } => points[0],
            Attachment::DoubleChord {
                principal, others, ..
            } => principal.min(others[0]).min(others[1]),
        }
    }
}

impl fmt::Display for Attachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attachment::Chord { points: [p, q], .. } => write!(f, "chord {p} {q}"),
            Attachment::Triad {
                points: [p, q, r],
                rotation,
                ..
            } => {
                let kind = match rotation {
                    Rotation::Flat => "flat",
                    Rotation::Crossed => "crossed",
                };
                write!(f, "triad {p} {q} {r} {kind}")
            }
            Attachment::DoubleChord {
                principal,
                others: [q, r],
                ..
            } => {
                write!(f, "dchord {principal}* {q} {r}")
            }
        }
    }
}

/// A circle of `len` points, each carrying exactly one attachment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarChordDiagram {
    len: usize,
    attachments: Vec<Attachment>,
}

impl StarChordDiagram {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Attachments ordered by their first circle point.
    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }
}

/// Reads the *-chord diagram off a rotating-splitting circuit.
pub fn build_star_chord_diagram(
    circuit: &EulerCircuit,
    classes: &BTreeMap<VertexId, VertexClass>,
) -> Result<StarChordDiagram> {
    let len = circuit.len();
    let mut attachments = Vec::with_capacity(classes.len());
    let all = circuit.positions();
    for (&v, &class) in classes {
        let pos = all.get(&v).cloned().unwrap_or_default();
        let wrong =
            || Error::BrokenInvariant(format!("vertex {v} has {} visits for {class}", pos.len()));
        let a = match class {
            VertexClass::Rotating4 => Attachment::Chord {
                vertex: v,
                points: pos.as_slice().try_into().map_err(|_| wrong())?,
            },
            VertexClass::Rotating6(rotation) => Attachment::Triad {
                vertex: v,
                points: pos.as_slice().try_into().map_err(|_| wrong())?,
                rotation,
            },
            VertexClass::Splitting6 { principal } => {
                if pos.len() != 3 || !pos.contains(&principal) {
                    return Err(wrong());
                }
                let mut others: Vec<usize> =
                    pos.iter().copied().filter(|&p| p != principal).collect();
                others.sort_by_key(|&p| (p + len - principal) % len);
                Attachment::DoubleChord {
                    vertex: v,
                    principal,
                    others: [others[0], others[1]],
                }
            }
        };
        attachments.push(a);
    }
    attachments.sort_by_key(Attachment::first_point);
    let mut covered = vec![false; len];
    for a in &attachments {
        let pts: Vec<usize> = match *a {
            Attachment::Chord { points, .. } => points.to_vec(),
            Attachment::Triad { points, .. } => points.to_vec(),
            Attachment::DoubleChord {
                principal, others, ..
            } => vec![principal, others[0], others[1]],
        };
        for p in pts {
            if std::mem::replace(&mut covered[p], true) {
                return Err(Error::BrokenInvariant(format!(
                    "circle point {p} attached twice"
                )));
            }
        }
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::BrokenInvariant(
            "circle point without attachment".into(),
        ));
    }
    Ok(StarChordDiagram { len, attachments })
}

/// Where an expanded chord came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChordKind {
    Plain,
    Triad,
    /// The double-chord chord at the `p+` copy of the principal point.
    DoublePlus,
    /// The double-chord chord at the `p-` copy.
    DoubleMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chord {
    /// Endpoints on the circle, `ends.0 < ends.1`.
    pub ends: (usize, usize),
    pub vertex: VertexId,
    pub kind: ChordKind,
}

/// An ordinary chord diagram: `2n` circle endpoints, each on exactly one of
/// `n` chords. Chords are sorted by smallest endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    chords: Vec<Chord>,
}

impl ChordDiagram {
    /// Builds a diagram from endpoint pairs; provenance is set to
    /// `Plain` with the chord's input index as vertex.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let chords = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| Chord {
                ends: (a.min(b), a.max(b)),
                vertex: i as VertexId,
                kind: ChordKind::Plain,
            })
            .collect();
        Self::from_chords(chords)
    }

    fn from_chords(mut chords: Vec<Chord>) -> Result<Self> {
        let n = 2 * chords.len();
        let mut used = vec![false; n];
        for c in &chords {
            for p in [c.ends.0, c.ends.1] {
                if p >= n {
                    return Err(Error::IndexOutOfRange { index: p, dim: n });
                }
                if std::mem::replace(&mut used[p], true) {
                    return Err(Error::DuplicateIndex(p));
                }
            }
        }
        chords.sort_by_key(|c| c.ends.0);
        Ok(Self { chords })
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    /// Indices of the chords derived from each source vertex, ascending vertex.
    pub fn groups(&self) -> BTreeMap<VertexId, Vec<usize>> {
        let mut g: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.chords.iter().enumerate() {
            g.entry(c.vertex).or_default().push(i);
        }
        g
    }
}

/// Expands triads and double chords into pairs of ordinary chords.
///
/// The split point `p` becomes `p-` immediately followed by `p+`. A triad on
/// `p < q < r` splits `p`: flat gives `(p+, q), (p-, r)`, crossed gives
/// `(p-, q), (p+, r)`. A double chord splits its principal point and gives
/// `(p+, q), (p-, r)` for `q, r` in circle order after `p`.
pub fn expand(d: &StarChordDiagram) -> ChordDiagram {
    let mut split = vec![false; d.len];
    for a in &d.attachments {
        match *a {
            Attachment::Triad { points, .. } => split[points[0]] = true,
            Attachment::DoubleChord { principal, .. } => split[principal] = true,
            Attachment::Chord { .. } => {}
        }
    }
    // first new position of each old point
    let mut at = Vec::with_capacity(d.len);
    let mut next = 0;
    for &s in &split {
        at.push(next);
        next += if s { 2 } else { 1 };
    }
    let minus = |p: usize| at[p];
    let plus = |p: usize| at[p] + 1;

    let mut chords = Vec::new();
    let mut push = |a: usize, b: usize, vertex, kind| {
        chords.push(Chord {
            ends: (a.min(b), a.max(b)),
            vertex,
            kind,
        });
    };
    for a in &d.attachments {
        match *a {
            Attachment::Chord {
                vertex,
                points: [p, q],
            } => push(at[p], at[q], vertex, ChordKind::Plain),
            Attachment::Triad {
                vertex,
                points: [p, q, r],
                rotation,
            } => match rotation {
                Rotation::Flat => {
                    push(plus(p), at[q], vertex, ChordKind::Triad);
                    push(minus(p), at[r], vertex, ChordKind::Triad);
                }
                Rotation::Crossed => {
                    push(minus(p), at[q], vertex, ChordKind::Triad);
                    push(plus(p), at[r], vertex, ChordKind::Triad);
                }
            },
            Attachment::DoubleChord {
                vertex,
                principal: p,
                others: [q, r],
            } => {
                push(plus(p), at[q], vertex, ChordKind::DoublePlus);
                push(minus(p), at[r], vertex, ChordKind::DoubleMinus);
            }
        }
    }
    ChordDiagram::from_chords(chords).expect("expansion covers every endpoint once")
}

/// Whether the endpoints of two chords interleave around the circle.
pub fn linked(d: &ChordDiagram, c1: usize, c2: usize) -> bool {
    chords_linked(d.chords[c1].ends, d.chords[c2].ends)
}

#[inline]
pub(crate) fn chords_linked((a, b): (usize, usize), (c, e): (usize, usize)) -> bool {
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(e)
}

/// The symmetric GF(2) matrix of linked chord pairs, indexed like `d.chords()`.
pub fn intersection_matrix(d: &ChordDiagram) -> BitMatrix {
    let n = d.chords.len();
    let mut m = BitMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            if linked(d, i, j) {
                m.set(i, j, true);
                m.set(j, i, true);
            }
        }
    }
    m
}

/// Number of circles after surgery along every chord.
///
/// Each endpoint `a` is cut into `a-` and `a+`. Circle arcs join `a+` to the
/// next endpoint's `-` side; each chord `(a, b)` joins `a+` to `b-` and `a-`
/// to `b+`. Components of the resulting 2-regular structure are counted by
/// walking it.
pub fn surgery(d: &ChordDiagram) -> usize {
    let n = 2 * d.chords.len();
    if n == 0 {
        return 1;
    }
    // node 2p is p-, node 2p + 1 is p+
    let arc = |node: usize| {
        let p = node / 2;
        if node % 2 == 1 {
            2 * ((p + 1) % n)
        } else {
            2 * ((p + n - 1) % n) + 1
        }
    };
    let mut across = vec![0usize; 2 * n];
    for c in &d.chords {
        let (a, b) = c.ends;
        across[2 * a + 1] = 2 * b;
        across[2 * b] = 2 * a + 1;
        across[2 * a] = 2 * b + 1;
        across[2 * b + 1] = 2 * a;
    }
    let mut seen = vec![false; 2 * n];
    let mut circles = 0;
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        circles += 1;
        let mut node = start;
        loop {
            seen[node] = true;
            let far = arc(node);
            seen[far] = true;
            node = across[far];
            if node == start {
                break;
            }
        }
    }
    circles
}
