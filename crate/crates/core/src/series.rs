//! The `S` and `T` polynomials of a box decomposition, and truncated Hilbert
//! numerators counted directly from lattice points.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::cone::lattice_points_of_degree;
use crate::decomposition::{BoxDecomposition, Sign};
use crate::triangulation::Triangulation;

/// Integer polynomial in `t`, stored densely by degree with trailing zeros
/// trimmed. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedPolynomial(Vec<i64>);

impl GradedPolynomial {
    pub fn new(mut coefficients: Vec<i64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        GradedPolynomial(coefficients)
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![0; degree + 1];
        c[degree] = 1;
        GradedPolynomial(c)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, degree: usize) -> i64 {
        self.0.get(degree).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// `t^r · p(1/t)`; requires `deg p ≤ r`.
    pub fn reflect(&self, r: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= r), "degree exceeds reflection bound");
        GradedPolynomial::new((0..=r).map(|k| self.coeff(r - k)).collect())
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{a}t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn box_polynomial(decomp: &BoxDecomposition, sign: Sign) -> GradedPolynomial {
    let mut c = vec![0i64; decomp.triangulation().cone().rank() + 1];
    for set in decomp.box_sets(sign) {
        for b in &set.points {
            c[b.point.degree() as usize] += 1;
        }
    }
    GradedPolynomial::new(c)
}

/// `S(t) = Σ_I Σ_{b ∈ B_{I,ξ}} t^{deg b}`.
pub fn s_polynomial(decomp: &BoxDecomposition) -> GradedPolynomial {
    box_polynomial(decomp, Sign::Plus)
}

/// `T(t) = Σ_I Σ_{b ∈ B_{I,−ξ}} t^{deg b}`.
pub fn t_polynomial(decomp: &BoxDecomposition) -> GradedPolynomial {
    box_polynomial(decomp, Sign::Minus)
}

/// Lattice points of `K` (or `K^open`) counted per degree up to `max_degree`.
pub fn lattice_point_counts(tri: &Triangulation, max_degree: usize, interior_only: bool) -> Vec<i64> {
    (0..=max_degree).map(|d| lattice_points_of_degree(tri, d as i64, interior_only).len() as i64).collect()
}

/// `(1−t)^r · Σ_n t^{deg n}` modulo `t^{D+1}`, summing over `K ∩ N` or
/// `K^open ∩ N`.
pub fn hilbert_numerator_truncated(tri: &Triangulation, max_degree: usize, interior_only: bool) -> GradedPolynomial {
    let r = tri.cone().rank() as i64;
    let counts = lattice_point_counts(tri, max_degree, interior_only);
    let c = (0..=max_degree)
        .map(|k| {
            (0..=k.min(r as usize))
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * binomial(r, j as i64) * counts[k - j]
                })
                .sum()
        })
        .collect();
    GradedPolynomial::new(c)
}

/// `[t^k] S = [t^{r−k}] T` for every `k`, with neither polynomial exceeding
/// degree `r`.
pub fn check_duality(s: &GradedPolynomial, t: &GradedPolynomial, r: usize) -> bool {
    let bounded = |p: &GradedPolynomial| p.degree().is_none_or(|d| d <= r);
    bounded(s) && bounded(t) && (0..=r).all(|k| s.coeff(k) == t.coeff(r - k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::GradedCone;
    use crate::decomposition::GenericDirection;
    use crate::exactmath::Rational;
    use crate::triangulation::Heights;

    fn p(c: &[i64]) -> GradedPolynomial {
        GradedPolynomial::new(c.to_vec())
    }

    fn square() -> Triangulation {
        let pts = vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![1, 1, 1]];
        let cone = GradedCone::new(3, pts.clone(), vec![1, 0, 0], pts).unwrap();
        Triangulation::build(&cone, &Heights::from_integers(&[0, 0, 0, 1])).unwrap()
    }

    fn index2() -> Triangulation {
        let cone = GradedCone::simplicial(vec![vec![1, 0], vec![1, 2]], vec![1, 0]).unwrap();
        Triangulation::build(&cone, &Heights::from_integers(&[0, 0])).unwrap()
    }

    fn decomp(tri: Triangulation, seed: u64) -> BoxDecomposition {
        let (dir, _) = GenericDirection::choose(&tri, seed, 50).unwrap();
        BoxDecomposition::new(tri, dir)
    }

    #[test]
    fn trims_and_prints() {
        assert_eq!(p(&[1, 0, 0]).coefficients(), &[1]);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, -2, 1]).to_string(), "1 - 2t + t^2");
        assert_eq!(p(&[0, 1, 3]).to_string(), "t + 3t^2");
        assert_eq!(p(&[1, 1]).reflect(3), p(&[0, 0, 1, 1]));
        assert_eq!(serde_json::to_string(&p(&[0, 1, 1])).unwrap(), "[0,1,1]");
    }

    #[test]
    fn s_and_t_examples() {
        for r in 1..=3 {
            let tri = Triangulation::build(&GradedCone::orthant(r), &Heights::from_integers(&vec![0; r])).unwrap();
            let d = decomp(tri, 1);
            assert_eq!(s_polynomial(&d), p(&[1]));
            assert_eq!(t_polynomial(&d), GradedPolynomial::monomial(r));
        }
        let d = BoxDecomposition::new(
            index2(),
            GenericDirection::new(&index2(), vec![Rational::integer(1), Rational::integer(1)]).unwrap(),
        );
        assert_eq!(s_polynomial(&d), p(&[1, 1]));
        assert_eq!(t_polynomial(&d), p(&[0, 1, 1]));

        let d = decomp(square(), 4);
        assert_eq!(s_polynomial(&d), p(&[1, 1]));
        assert_eq!(t_polynomial(&d), p(&[0, 0, 1, 1]));
    }

    #[test]
    fn hilbert_examples() {
        let tri = Triangulation::build(&GradedCone::orthant(2), &Heights::from_integers(&[0, 0])).unwrap();
        assert_eq!(hilbert_numerator_truncated(&tri, 5, false), p(&[1]));
        assert_eq!(hilbert_numerator_truncated(&index2(), 5, false), p(&[1, 1]));
        assert_eq!(hilbert_numerator_truncated(&square(), 5, true), p(&[0, 0, 1, 1]));
        assert_eq!(lattice_point_counts(&square(), 4, true), vec![0, 0, 1, 4, 9]);
    }

    #[test]
    fn duality_examples() {
        assert!(check_duality(&p(&[1]), &p(&[0, 0, 1]), 2));
        assert!(check_duality(&p(&[1, 1]), &p(&[0, 1, 1]), 2));
        assert!(!check_duality(&p(&[1, 1]), &p(&[0, 0, 1]), 2));
        assert!(!check_duality(&p(&[1, 0, 0, 1]), &p(&[1]), 2));
    }

    #[test]
    fn s_is_independent_of_direction() {
        let a = s_polynomial(&decomp(square(), 1));
        for seed in 2..5 {
            assert_eq!(s_polynomial(&decomp(square(), seed)), a);
        }
    }
}
