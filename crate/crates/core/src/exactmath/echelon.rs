//! Incremental row echelon form over sparse rational vectors.
//!
//! Rows are kept in semi-echelon form: each stored row has a distinct leading
//! column where its entry is 1. That is enough both for rank bookkeeping and
//! for full reduction modulo the row space (reduce in increasing column
//! order; a row only touches columns at or after its pivot).

use num_traits::Zero;

use super::Rational;

/// Sparse vector as `(index, value)` pairs sorted by index with no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
pub struct SparseEchelon {
    dim: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
}

impl SparseEchelon {
    pub fn new(dim: usize) -> Self {
        SparseEchelon { dim, pivot_row: vec![None; dim], rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Columns that carry no pivot; a complement of the row space.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    fn load(&self, v: &[(usize, Rational)]) -> Vec<Rational> {
        let mut ws = vec![Rational::zero(); self.dim];
        for (i, a) in v {
            assert!(*i < self.dim, "index {i} out of range {}", self.dim);
            ws[*i] = a.clone();
        }
        ws
    }

    fn eliminate(&self, ws: &mut [Rational], col: usize) {
        let row = &self.rows[self.pivot_row[col].expect("pivot")];
        let factor = std::mem::take(&mut ws[col]);
        for (j, a) in &row[1..] {
            let t = &factor * a;
            ws[*j] -= &t;
        }
    }

    /// Adds `v` to the spanning set. Returns true if the rank grew.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        if self.is_full() {
            return false;
        }
        let Some(start) = v.first().map(|(i, _)| *i) else {
            return false;
        };
        let mut ws = self.load(v);
        for col in start..self.dim {
            if ws[col].is_zero() {
                continue;
            }
            if self.pivot_row[col].is_some() {
                self.eliminate(&mut ws, col);
                continue;
            }
            let inv = ws[col].recip();
            let row: SparseVec = ws
                .into_iter()
                .enumerate()
                .skip(col)
                .filter(|(_, a)| !a.is_zero())
                .map(|(j, a)| (j, a * &inv))
                .collect();
            self.pivot_row[col] = Some(self.rows.len());
            self.rows.push(row);
            return true;
        }
        false
    }

    /// Fully reduces `v` modulo the row space. The result has no entries in
    /// pivot columns and is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut ws = self.load(v);
        for col in 0..self.dim {
            if !ws[col].is_zero() && self.pivot_row[col].is_some() {
                self.eliminate(&mut ws, col);
            }
        }
        ws.into_iter().enumerate().filter(|(_, a)| !a.is_zero()).collect()
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }
}
