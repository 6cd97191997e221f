//! Union-find that tracks a parity bit between each element and its root.
//!
//! Used for two-colouring problems: "same" and "different" constraints between
//! pairs, with conflict detection on odd cycles.

/// Outcome of adding a constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// The two elements were in different sets and are now joined.
    Merged,
    /// Already related with the requested parity.
    Consistent,
    /// Already related with the opposite parity.
    Conflict,
}

#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    // parity relative to parent
    parity: Vec<bool>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            parity: vec![false; n],
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `x` and the parity of `x` relative to that root.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // walk back from the node nearest the root, accumulating parity
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (
            root,
            if path.is_empty() {
                false
            } else {
                self.parity[x]
            },
        )
    }

    /// Requires `parity(a) XOR parity(b) == differ`.
    pub fn relate(&mut self, a: usize, b: usize, differ: bool) -> Relation {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa ^ pb == differ {
                Relation::Consistent
            } else {
                Relation::Conflict
            };
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo] = hi;
        self.parity[lo] = pa ^ pb ^ differ;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        Relation::Merged
    }
}
