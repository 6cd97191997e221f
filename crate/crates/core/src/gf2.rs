//! Dense square matrices over GF(2) with rows packed into machine words.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    /// Builds from 0/1 rows. Fails unless the rows form a square matrix.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {i} has {} entries in a {n}x{n} matrix",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x & 1 == 1);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        let bit = 1u64 << (j % 64);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| !self.get(i, i))
    }

    /// Rank over GF(2), by elimination on a private copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let w = self.words;
        let mut rank = 0;
        for col in 0..self.n {
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..self.n).find(|&r| rows[r * w + word] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..w {
                    rows.swap(pivot * w + k, rank * w + k);
                }
            }
            for r in rank + 1..self.n {
                if rows[r * w + word] & bit != 0 {
                    for k in word..w {
                        rows[r * w + k] ^= rows[rank * w + k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn corank(&self) -> usize {
        self.n - self.rank()
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<BitMatrix> {
        let mut seen = vec![false; self.n];
        for &i in indices {
            if i >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: self.n,
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateIndex(i));
            }
        }
        let mut sub = BitMatrix::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                if self.get(i, j) {
                    sub.set(a, b, true);
                }
            }
        }
        Ok(sub)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}
