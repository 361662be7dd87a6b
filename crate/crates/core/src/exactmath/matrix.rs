//! Dense rational matrices and Gauss-Jordan elimination.

use std::fmt;

use num_traits::{One, Zero};

use super::{LinAlgError, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of [`RatMatrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Rational>,
    /// False when the system has a positive-dimensional solution set; `x` is
    /// then the solution with all free variables set to zero.
    pub unique: bool,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        RatMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Rational::integer(v)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(found) = (prow..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(found, prow);
            let inv = m[(prow, col)].recip();
            for j in col..m.cols {
                let v = &m[(prow, j)] * &inv;
                m[(prow, j)] = v;
            }
            for i in 0..m.rows {
                if i == prow || m[(i, col)].is_zero() {
                    continue;
                }
                let factor = m[(i, col)].clone();
                for j in col..m.cols {
                    if m[(prow, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &(&factor * &m[(prow, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&matrix[(r, free)];
                }
                v
            })
            .collect()
    }

    /// Exact solution of `A x = b`.
    pub fn solve(&self, b: &[Rational]) -> Result<Solution, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinAlgError::NoSolution);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(r, self.cols)].clone();
        }
        Ok(Solution { x, unique: pivots.len() == self.cols })
    }

    pub fn determinant(&self) -> Result<Rational, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(found) = (col..n).find(|&i| !m[(i, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if found != col {
                m.swap_rows(found, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            let inv = pivot.recip();
            for i in col + 1..n {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let factor = &m[(i, col)] * &inv;
                for j in col..n {
                    let v = &m[(i, j)] - &(&factor * &m[(col, j)]);
                    m[(i, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square matrix, or `Singular`.
    pub fn inverse(&self) -> Result<RatMatrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RatMatrix::zeros(0, 0));
        }
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinAlgError::Singular);
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = matrix[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
