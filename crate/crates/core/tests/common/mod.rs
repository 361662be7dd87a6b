//! Shared fixtures: named cones, a seeded random corpus, and oracles that
//! work from the rays alone (no triangulation involved).

#![allow(dead_code)]

use conering::cone::in_cone_of;
use conering::exactmath::{to_rational, RatMatrix, Rational};
use conering::GradedCone;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Case {
    pub label: String,
    pub cone: GradedCone,
}

pub fn orthant(r: usize) -> GradedCone {
    GradedCone::orthant(r)
}

pub fn index2() -> GradedCone {
    GradedCone::simplicial(vec![vec![1, 0], vec![1, 2]], vec![1, 0]).unwrap()
}

pub fn square() -> GradedCone {
    let pts = vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![1, 1, 1]];
    GradedCone::new(3, pts.clone(), vec![1, 0, 0], pts).unwrap()
}

/// Cone over a lattice polytope `P ⊂ Z^{r−1}`: points `(1, p)`, degree the
/// first coordinate, rays the vertices of `P`.
pub fn cone_over(polytope: &[Vec<i64>]) -> GradedCone {
    let points: Vec<Vec<i64>> = polytope.iter().map(|p| std::iter::once(1).chain(p.iter().copied()).collect()).collect();
    let r = points[0].len();
    let rays: Vec<Vec<i64>> = points
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<Vec<i64>> =
                points.iter().enumerate().filter(|(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            !in_cone_of(&others, &to_rational(p))
        })
        .map(|(_, p)| p.clone())
        .collect();
    let mut degree = vec![0; r];
    degree[0] = 1;
    GradedCone::new(r, rays, degree, points).unwrap()
}

fn full_dimensional(points: &[Vec<i64>]) -> bool {
    let h: Vec<Vec<i64>> = points.iter().map(|p| std::iter::once(1).chain(p.iter().copied()).collect()).collect();
    RatMatrix::from_i64_rows(&h).rank() == h[0].len()
}

/// Random full-dimensional polytopes with `dim + 1 ≤ d ≤ max_points`
/// distinct vertices-or-not points in `[0, side]^dim`.
fn random_polytope(rng: &mut ChaCha8Rng, dim: usize, side: i64, max_points: usize) -> Vec<Vec<i64>> {
    let mut grid: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        grid = grid.into_iter().flat_map(|p| (0..=side).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    loop {
        let d = rng.gen_range(dim + 1..=max_points.min(grid.len()));
        let pts: Vec<Vec<i64>> = grid.choose_multiple(rng, d).cloned().collect();
        if full_dimensional(&pts) {
            return pts;
        }
    }
}

/// Cone over a seeded random polytope in `[0, side]^(r−1)`.
pub fn random_cone(seed: u64, r: usize, side: i64, max_points: usize) -> GradedCone {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cone_over(&random_polytope(&mut rng, r - 1, side, max_points))
}

/// 24 cones: 8 each of ranks 2, 3, 4, with at most 8 points. Ranks 2 and 3
/// use polytopes in `[0,3]` and `[0,2]^2`; rank 4 uses `[0,1]^3`.
pub fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut out = Vec::new();
    for (r, side, max_points) in [(2usize, 3i64, 4usize), (3, 2, 6), (4, 1, 8)] {
        for i in 0..8 {
            let poly = random_polytope(&mut rng, r - 1, side, max_points);
            out.push(Case { label: format!("r{r}-{i} {poly:?}"), cone: cone_over(&poly) });
        }
    }
    out
}

/// The rank ≤ 3 part of the corpus.
pub fn small_corpus() -> Vec<Case> {
    corpus().into_iter().filter(|c| c.cone.rank() <= 3).collect()
}

/// Inward facet normals of the cone spanned by `rays`, each found as the
/// kernel of an (r−1)-subset of rays with all rays on one side.
pub fn facet_normals(cone: &GradedCone) -> Vec<Vec<Rational>> {
    let rays = cone.ray_generators();
    let r = cone.rank();
    let mut normals: Vec<Vec<Rational>> = Vec::new();
    for subset in conering::combinatorics::combinations(rays.len(), r - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| rays[i].clone()).collect();
        let kernel = if rows.is_empty() {
            RatMatrix::identity(r).to_rows()
        } else {
            RatMatrix::from_i64_rows(&rows).nullspace()
        };
        if kernel.len() != 1 {
            continue;
        }
        let u = &kernel[0];
        let side: Vec<Rational> =
            rays.iter().map(|e| e.iter().zip(u).map(|(a, b)| &Rational::integer(*a) * b).sum()).collect();
        let signs: Vec<i32> = side.iter().map(|s| s.signum()).collect();
        let normal = if signs.iter().all(|&s| s >= 0) {
            u.clone()
        } else if signs.iter().all(|&s| s <= 0) {
            u.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        if !normals.contains(&normal) {
            normals.push(normal);
        }
    }
    normals
}

fn dot(u: &[Rational], n: &[i64]) -> Rational {
    u.iter().zip(n).map(|(a, b)| a * &Rational::integer(*b)).sum()
}

/// Lattice points of degree `l` in `K` (or its interior), by scanning the
/// box `l · [min, max]` of the rays and testing facet inequalities.
pub fn count_points(cone: &GradedCone, normals: &[Vec<Rational>], l: i64, interior: bool) -> i64 {
    let rays = cone.ray_generators();
    let r = cone.rank();
    let lo: Vec<i64> = (0..r).map(|c| rays.iter().map(|g| g[c] * l).min().unwrap()).collect();
    let hi: Vec<i64> = (0..r).map(|c| rays.iter().map(|g| g[c] * l).max().unwrap()).collect();
    let mut count = 0;
    let mut n = lo.clone();
    loop {
        if cone.degree_of(&n) == l
            && normals.iter().all(|u| {
                let s = dot(u, &n).signum();
                if interior {
                    s > 0
                } else {
                    s >= 0
                }
            })
        {
            count += 1;
        }
        let mut c = 0;
        loop {
            if c == r {
                return count;
            }
            if n[c] < hi[c] {
                n[c] += 1;
                break;
            }
            n[c] = lo[c];
            c += 1;
        }
    }
}

/// `(1−t)^r Σ_{l ≤ D} count(l) t^l` truncated at `D`, trailing zeros dropped.
pub fn oracle_numerator(cone: &GradedCone, max_degree: i64, interior: bool) -> Vec<i64> {
    let normals = facet_normals(cone);
    let counts: Vec<i64> = (0..=max_degree).map(|l| count_points(cone, &normals, l, interior)).collect();
    let r = cone.rank() as i64;
    let mut c: Vec<i64> = (0..=max_degree as usize)
        .map(|k| {
            (0..=k.min(r as usize))
                .map(|j| {
                    let b = (0..j as i64).fold(1i64, |acc, i| acc * (r - i) / (i + 1));
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * b * counts[k - j]
                })
                .sum()
        })
        .collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}
