//! Bit-packed rows, vertex sets and boolean matrices.
//!
//! Every matrix in the crate stores one machine word per row; bit `j` of row
//! `i` is the entry in row `i + 1`, column `j + 1` (vertices are 1-indexed at
//! the public surface, 0-indexed in the bit layout).

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported order.
pub const MAX_ORDER: usize = 16;

pub(crate) type Row = u16;
pub(crate) type Rows = [Row; MAX_ORDER];

pub(crate) fn full_row(n: usize) -> Row {
    debug_assert!(n <= MAX_ORDER);
    if n == MAX_ORDER {
        Row::MAX
    } else {
        (1 << n) - 1
    }
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyOrder)
    } else if n > MAX_ORDER {
        Err(Error::OrderTooLarge { n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

pub(crate) fn check_vertex(vertex: usize, n: usize) -> Result<()> {
    if vertex == 0 || vertex > n {
        Err(Error::VertexOutOfRange { vertex, n })
    } else {
        Ok(())
    }
}

/// Iterates the 0-based indices of set bits.
pub(crate) fn ones(row: Row) -> impl Iterator<Item = usize> {
    let mut rest = row;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// A set of vertices of a digraph of order at most [`MAX_ORDER`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Row);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        VertexSet(full_row(n))
    }

    /// Builds a set from 1-based labels, validating them against `n`.
    pub fn from_labels(n: usize, labels: &[usize]) -> Result<Self> {
        let mut bits = 0;
        for &v in labels {
            check_vertex(v, n)?;
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub(crate) fn bits(self) -> Row {
        self.0
    }

    pub fn contains(self, vertex: usize) -> bool {
        (1..=MAX_ORDER).contains(&vertex) && self.0 >> (vertex - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// 1-based labels in ascending order.
    pub fn labels(self) -> Vec<usize> {
        ones(self.0).map(|i| i + 1).collect()
    }

    pub(crate) fn validate(self, n: usize) -> Result<()> {
        if self.is_empty() {
            return Err(Error::InvalidArgument("vertex set is empty".into()));
        }
        if self.0 & !full_row(n) != 0 {
            let vertex = ones(self.0 & !full_row(n)).next().unwrap() + 1;
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().iter().join(","))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.labels())
    }
}

/// All `k`-subsets of `{1..n}` in lexicographic order of their sorted labels.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    (0..n)
        .combinations(k)
        .map(|c| VertexSet(c.into_iter().fold(0, |acc, i| acc | (1 << i))))
}

/// Square boolean matrix, one bit row per vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    rows: Rows,
}

impl BoolMatrix {
    pub fn zero(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(BoolMatrix {
            n,
            rows: [0; MAX_ORDER],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zero(n)?;
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        Ok(m)
    }

    pub(crate) fn from_rows(n: usize, rows: Rows) -> Self {
        BoolMatrix { n, rows }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i >= 1 && i <= self.n && j >= 1 && j <= self.n,
            "index out of range"
        );
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i >= 1 && i <= self.n && j >= 1 && j <= self.n,
            "index out of range"
        );
        if value {
            self.rows[i - 1] |= 1 << (j - 1);
        } else {
            self.rows[i - 1] &= !(1 << (j - 1));
        }
    }

    pub(crate) fn rows(&self) -> &Rows {
        &self.rows
    }

    /// Set of columns that are true in row `i` (1-based).
    pub fn row(&self, i: usize) -> VertexSet {
        VertexSet(self.rows[i - 1])
    }

    pub fn mul(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.n != other.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = [0; MAX_ORDER];
        for (i, row) in self.rows[..self.n].iter().enumerate() {
            out[i] = ones(*row).fold(0, |acc, t| acc | other.rows[t]);
        }
        Ok(BoolMatrix {
            n: self.n,
            rows: out,
        })
    }

    pub fn is_all_true(&self) -> bool {
        let full = full_row(self.n);
        self.rows[..self.n].iter().all(|&r| r == full)
    }

    pub fn is_all_false(&self) -> bool {
        self.rows[..self.n].iter().all(|&r| r == 0)
    }

    pub fn count_true(&self) -> usize {
        self.rows[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum()
    }

    /// Vertices `i` whose diagonal entry `(i, i)` is set.
    pub fn diagonal(&self) -> VertexSet {
        VertexSet((0..self.n).fold(0, |acc, i| acc | (self.rows[i] & (1 << i))))
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let line: String = (0..self.n)
                .map(|j| if self.rows[i] >> j & 1 == 1 { '1' } else { '0' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Outcome of a coverage scan for one vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Cover {
    pub set: VertexSet,
    pub first: Option<usize>,
}

/// For every `k`-subset `X` (lexicographic order), finds the least `p` in
/// `start..=stop` at which the union of the rows of `layer(p)` indexed by `X`
/// is the full vertex set.
pub(crate) fn first_cover<F>(
    n: usize,
    k: usize,
    start: usize,
    stop: usize,
    mut layer: F,
) -> Vec<Cover>
where
    F: FnMut(usize) -> Rows,
{
    let mut covers: Vec<Cover> = k_subsets(n, k)
        .map(|set| Cover { set, first: None })
        .collect();
    let full = full_row(n);
    let mut open = covers.len();
    for p in start..=stop {
        if open == 0 {
            break;
        }
        let rows = layer(p);
        for c in covers.iter_mut().filter(|c| c.first.is_none()) {
            let union = ones(c.set.bits()).fold(0, |acc, x| acc | rows[x]);
            if union == full {
                c.first = Some(p);
                open -= 1;
            }
        }
    }
    covers
}

/// The lexicographically first maximiser among covers that all resolved.
pub(crate) fn max_cover(covers: &[Cover]) -> Option<(usize, VertexSet)> {
    let mut best: Option<(usize, VertexSet)> = None;
    for c in covers {
        let p = c.first?;
        if best.is_none_or(|(b, _)| p > b) {
            best = Some((p, c.set));
        }
    }
    best
}
