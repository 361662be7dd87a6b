//! Exact rational arithmetic and linear algebra.

mod echelon;
mod eps;
mod matrix;
pub mod modular;
mod rational;

pub use echelon::{SparseEchelon, SparseVec};
pub use eps::{dot_eps, perturbed, EpsNumber};
pub use matrix::{RatMatrix, Rref, Solution};
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
}

/// Lifts an integer vector to rationals.
pub fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::integer(x)).collect()
}

/// Standard dot product of integer vectors.
pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `A x = b` exactly. See [`RatMatrix::solve`].
pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<Solution, LinAlgError> {
    a.solve(b)
}
