//! Level-graded sparse matrices over an exact field.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{Rational, Scalar};

/// A sparse `rows x cols` matrix; absent entries are zero and stored entries
/// are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block<S> {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> Block<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Block { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut b = Block::zero(n, n);
        for i in 0..n {
            b.entries.insert((i, i), S::one());
        }
        b
    }

    /// Accumulates into entry `(r, c)`.
    pub fn add_at(&mut self, r: usize, c: usize, v: S) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        if v.is_zero() {
            return;
        }
        match self.entries.remove(&(r, c)) {
            Some(old) => {
                let s = old + v;
                if !s.is_zero() {
                    self.entries.insert((r, c), s);
                }
            }
            None => {
                self.entries.insert((r, c), v);
            }
        }
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, rhs: &Block<S>) -> Block<S> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &S)>> = BTreeMap::new();
        for ((r, c), v) in &rhs.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = Block::zero(self.rows, rhs.cols);
        for ((r, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (c, b) in row {
                    out.add_at(*r, *c, a.clone() * *b);
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: &S) -> Block<S> {
        let mut out = Block::zero(self.rows, self.cols);
        for ((r, c), v) in &self.entries {
            out.add_at(*r, *c, v.clone() * s);
        }
        out
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: &S, other: &Block<S>) -> Block<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.add_at(*r, *c, v.clone() * s);
        }
        out
    }

    pub fn add(&self, other: &Block<S>) -> Block<S> {
        self.axpy(&S::one(), other)
    }

    pub fn sub(&self, other: &Block<S>) -> Block<S> {
        self.axpy(&-S::one(), other)
    }

    /// Diagonal entries, including zeros, for a square block.
    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries().filter(|(r, c, _)| r != c)
    }

    /// The entry that dominates all others (largest in absolute value for
    /// rationals), or zero.
    pub fn max_entry(&self) -> S {
        let mut best = S::zero();
        for v in self.entries.values() {
            if v.dominates(&best) {
                best = v.clone();
            }
        }
        best
    }
}

/// A graded operator: `blocks[n]` maps level `n` to level `n + shift`, or is
/// `None` when that target lies beyond the truncation. Targets below level 0
/// are the zero space, so those blocks have no rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOperator<S> {
    pub shift: i32,
    blocks: Vec<Option<Block<S>>>,
}

impl<S: Scalar> SparseOperator<S> {
    pub fn new(shift: i32, blocks: Vec<Option<Block<S>>>) -> Self {
        SparseOperator { shift, blocks }
    }

    /// Zero operator of the given shift on levels of the given sizes.
    pub fn zero(shift: i32, sizes: &[usize]) -> Self {
        let blocks = (0..sizes.len())
            .map(|n| {
                let t = n as i64 + shift as i64;
                if t >= sizes.len() as i64 {
                    None
                } else if t < 0 {
                    Some(Block::zero(0, sizes[n]))
                } else {
                    Some(Block::zero(sizes[t as usize], sizes[n]))
                }
            })
            .collect();
        SparseOperator { shift, blocks }
    }

    pub fn block(&self, n: usize) -> Option<&Block<S>> {
        self.blocks.get(n).and_then(Option::as_ref)
    }

    pub fn block_mut(&mut self, n: usize) -> Option<&mut Block<S>> {
        self.blocks.get_mut(n).and_then(Option::as_mut)
    }

    pub fn num_levels(&self) -> usize {
        self.blocks.len()
    }

    pub fn nnz(&self) -> usize {
        self.blocks.iter().flatten().map(Block::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Block::is_zero)
    }

    pub fn to_file(&self, name: &str, geometry: &str, params: serde_json::Value) -> OperatorFile {
        let levels = self
            .blocks
            .iter()
            .enumerate()
            .filter_map(|(n, b)| {
                b.as_ref().map(|b| OperatorLevel {
                    n,
                    rows: b.rows,
                    cols: b.cols,
                    entries: b.entries().map(|(r, c, v)| (r, c, v.to_wire())).collect(),
                })
            })
            .collect();
        OperatorFile {
            name: name.to_string(),
            geometry: geometry.to_string(),
            params,
            shift: self.shift,
            num_levels: self.blocks.len(),
            levels,
        }
    }

    /// Rebuilds an operator, reducing every stored rational into `S`.
    pub fn from_file(file: &OperatorFile) -> Result<Self, Error> {
        let mut blocks: Vec<Option<Block<S>>> = vec![None; file.num_levels];
        for lv in &file.levels {
            if lv.n >= file.num_levels {
                return Err(Error::Format(format!("level {} out of range", lv.n)));
            }
            let mut b = Block::zero(lv.rows, lv.cols);
            for (r, c, v) in &lv.entries {
                if *r >= lv.rows || *c >= lv.cols {
                    return Err(Error::Format(format!("entry ({r}, {c}) out of range")));
                }
                let q: Rational = v.parse()?;
                b.add_at(*r, *c, S::from_rational(&q)?);
            }
            blocks[lv.n] = Some(b);
        }
        Ok(SparseOperator { shift: file.shift, blocks })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorLevel {
    pub n: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

/// JSON form of an operator; entries are `[target, source, "p/q"]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub name: String,
    pub geometry: String,
    pub params: serde_json::Value,
    pub shift: i32,
    pub num_levels: usize,
    pub levels: Vec<OperatorLevel>,
}

/// Applies the word `ops[0] * ops[1] * ... * ops[k-1]` to source level `n`.
/// Returns `None` when an intermediate level leaves the truncation.
pub fn word_block<S: Scalar>(ops: &[&SparseOperator<S>], n: usize, sizes: &[usize]) -> Option<Block<S>> {
    let mut level = n as i64;
    let mut acc = Block::identity(*sizes.get(n)?);
    for op in ops.iter().rev() {
        let target = level + op.shift as i64;
        if target >= sizes.len() as i64 {
            return None;
        }
        acc = if level >= 0 {
            op.block(level as usize)?.mul(&acc)
        } else {
            // the zero space maps to zero
            let rows = if target >= 0 { sizes[target as usize] } else { 0 };
            Block::zero(rows, acc.cols)
        };
        level = target;
    }
    Some(acc)
}
