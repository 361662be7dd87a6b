//! Graded cones, their lattice points, and validation of the standing
//! assumptions (degree-one generators, pointedness, full dimension).

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};

use crate::combinatorics::combinations;
use crate::exactmath::{dot_i64, to_rational, RatMatrix, Rational};
use crate::triangulation::Triangulation;
use crate::Error;

/// A pointed, full-dimensional cone `K` in `N ⊗ R` with `N = Z^rank`,
/// a degree covector, and a set of degree-one lattice points that contains
/// every primitive ray generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GradedCone {
    rank: usize,
    ray_generators: Vec<Vec<i64>>,
    degree: Vec<i64>,
    points: Vec<Vec<i64>>,
}

/// A lattice point together with its degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    // Field order gives the (degree, lexicographic) ordering.
    degree: i64,
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>, degree_covector: &[i64]) -> Self {
        let degree = dot_i64(&coords, degree_covector);
        LatticePoint { degree, coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<Check>,
    /// Index in `N` of the sublattice generated by the points (informational;
    /// it may exceed one, e.g. for a single simplex of index two).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_sublattice_index: Option<String>,
}

impl ValidationReport {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl GradedCone {
    /// Builds a cone description. Only shapes are checked here; the
    /// geometric assumptions are checked by [`GradedCone::validate`].
    pub fn new(
        rank: usize,
        ray_generators: Vec<Vec<i64>>,
        degree: Vec<i64>,
        points: Vec<Vec<i64>>,
    ) -> Result<Self, Error> {
        if degree.len() != rank {
            return Err(Error::InvalidInput(format!(
                "degree covector has length {}, expected {rank}",
                degree.len()
            )));
        }
        for v in ray_generators.iter().chain(&points) {
            if v.len() != rank {
                return Err(Error::InvalidInput(format!(
                    "vector {v:?} has length {}, expected {rank}",
                    v.len()
                )));
            }
        }
        Ok(GradedCone { rank, ray_generators, degree, points })
    }

    /// Cone whose rays are the given degree-one points and whose point set is
    /// exactly those rays.
    pub fn simplicial(rays: Vec<Vec<i64>>, degree: Vec<i64>) -> Result<Self, Error> {
        let rank = degree.len();
        GradedCone::new(rank, rays.clone(), degree, rays)
    }

    /// The positive orthant of rank `r` with the standard basis as points.
    pub fn orthant(r: usize) -> Self {
        let basis: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        GradedCone { rank: r, ray_generators: basis.clone(), degree: vec![1; r], points: basis }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ray_generators(&self) -> &[Vec<i64>] {
        &self.ray_generators
    }

    pub fn degree(&self) -> &[i64] {
        &self.degree
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn degree_of(&self, v: &[i64]) -> i64 {
        dot_i64(&self.degree, v)
    }

    pub fn lattice_point(&self, coords: Vec<i64>) -> LatticePoint {
        LatticePoint::new(coords, &self.degree)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut push = |name: &'static str, failures: Vec<String>| {
            let passed = failures.is_empty();
            checks.push(Check { name, passed, detail: (!passed).then(|| failures.join("; ")) });
        };

        push(
            "ray_degree_one",
            self.ray_generators
                .iter()
                .filter(|v| self.degree_of(v) != 1)
                .map(|v| format!("ray {v:?} has degree {}", self.degree_of(v)))
                .collect(),
        );
        push(
            "point_degree_one",
            self.points
                .iter()
                .filter(|v| self.degree_of(v) != 1)
                .map(|v| format!("point {v:?} has degree {}", self.degree_of(v)))
                .collect(),
        );

        let mut dups = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            if self.points[..i].contains(p) {
                dups.push(format!("point {p:?} listed twice"));
            }
        }
        push("points_distinct", dups);

        push(
            "rays_among_points",
            self.ray_generators
                .iter()
                .filter(|r| !self.points.contains(r))
                .map(|r| format!("ray {r:?} missing from points"))
                .collect(),
        );

        // Every generator of the cone spanned by the points must be a listed
        // ray, and every listed ray must be extreme.
        let mut not_extreme = Vec::new();
        for r in &self.ray_generators {
            let others: Vec<Vec<i64>> = self
                .points
                .iter()
                .chain(&self.ray_generators)
                .filter(|p| *p != r)
                .cloned()
                .collect();
            if in_cone_of(&others, &to_rational(r)) {
                not_extreme.push(format!("ray {r:?} is not an extreme ray"));
            }
        }
        push("rays_extreme", not_extreme);

        let mut missing_rays = Vec::new();
        for p in &self.points {
            if self.ray_generators.contains(p) {
                continue;
            }
            let others: Vec<Vec<i64>> = self.points.iter().filter(|q| *q != p).cloned().collect();
            if !in_cone_of(&others, &to_rational(p)) {
                missing_rays.push(format!("point {p:?} spans a ray that is not listed"));
            }
            if !in_cone_of(&self.ray_generators, &to_rational(p)) {
                missing_rays.push(format!("point {p:?} lies outside the cone of the rays"));
            }
        }
        push("points_in_cone_of_rays", missing_rays);

        let all: Vec<Vec<i64>> = self.points.iter().chain(&self.ray_generators).cloned().collect();
        push(
            "pointed",
            positive_circuit(&all)
                .map(|c| vec![format!("nonnegative dependency among generators {c:?}")])
                .unwrap_or_default(),
        );

        let span_rank =
            if self.points.is_empty() { 0 } else { RatMatrix::from_i64_rows(&self.points).rank() };
        push(
            "full_dimensional",
            if span_rank == self.rank {
                vec![]
            } else {
                vec![format!("points span a space of dimension {span_rank} < {}", self.rank)]
            },
        );

        let points_sublattice_index = (span_rank == self.rank).then(|| {
            let g = combinations(self.points.len(), self.rank)
                .into_iter()
                .map(|s| {
                    let rows: Vec<Vec<i64>> = s.iter().map(|&i| self.points[i].clone()).collect();
                    let det = RatMatrix::from_i64_rows(&rows).determinant().expect("square");
                    det.numer()
                })
                .fold(num_bigint::BigInt::zero(), |a, b| num_integer::Integer::gcd(&a, &b));
            if self.rank == 0 {
                "1".to_string()
            } else {
                g.to_string()
            }
        });

        let valid = checks.iter().all(|c| c.passed);
        ValidationReport { valid, checks, points_sublattice_index }
    }

    pub fn ensure_valid(&self) -> Result<(), Error> {
        let report = self.validate();
        if report.valid {
            Ok(())
        } else {
            let msgs: Vec<String> = report
                .failures()
                .iter()
                .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default()))
                .collect();
            Err(Error::InvalidCone(msgs.join("; ")))
        }
    }
}

/// Whether `p` is a nonnegative combination of `gens`, by Carathéodory:
/// it suffices to try linearly independent subsets.
pub fn in_cone_of(gens: &[Vec<i64>], p: &[Rational]) -> bool {
    if p.iter().all(Zero::is_zero) {
        return true;
    }
    let dim = p.len();
    for k in 1..=gens.len().min(dim) {
        for subset in combinations(gens.len(), k) {
            // Columns are generators: solve G x = p.
            let cols: Vec<Vec<i64>> = subset.iter().map(|&i| gens[i].clone()).collect();
            let g = RatMatrix::from_i64_rows(&cols).transpose();
            if g.rank() < k {
                continue;
            }
            if let Ok(sol) = g.solve(p) {
                if sol.x.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// A circuit (minimal linear dependency) with all coefficients positive,
/// if one exists. Its existence is equivalent to the cone not being pointed.
fn positive_circuit(gens: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    if gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
        return gens.iter().find(|g| g.iter().all(|&x| x == 0)).map(|g| vec![g.clone()]);
    }
    let dim = gens.first().map_or(0, Vec::len);
    for k in 2..=gens.len().min(dim + 1) {
        for subset in combinations(gens.len(), k) {
            let cols: Vec<Vec<i64>> = subset.iter().map(|&i| gens[i].clone()).collect();
            let g = RatMatrix::from_i64_rows(&cols).transpose();
            let kernel = g.nullspace();
            if kernel.len() != 1 {
                continue;
            }
            let v = &kernel[0];
            if v.iter().any(Zero::is_zero) {
                continue;
            }
            if v.iter().all(Rational::is_positive) || v.iter().all(Rational::is_negative) {
                return Some(cols);
            }
        }
    }
    None
}

/// Membership of a rational point in `K` (`strict = false`) or in the
/// interior `K^open` (`strict = true`), computed by simplex location.
pub fn contains(tri: &Triangulation, p: &[Rational], strict: bool) -> bool {
    tri.contains(p, strict)
}

/// All lattice points of `K` (or `K^open`) of degree at most `max_degree`,
/// sorted by degree and then lexicographically.
pub fn lattice_points_up_to_degree(
    tri: &Triangulation,
    max_degree: i64,
    interior_only: bool,
) -> Vec<LatticePoint> {
    (0..=max_degree).flat_map(|l| lattice_points_of_degree(tri, l, interior_only)).collect()
}

/// Lattice points of `K` (or `K^open`) of degree exactly `degree`, sorted
/// lexicographically.
pub fn lattice_points_of_degree(
    tri: &Triangulation,
    degree: i64,
    interior_only: bool,
) -> Vec<LatticePoint> {
    let cone = tri.cone();
    let mut out = Vec::new();
    scan_degree_slice(cone.points(), cone.degree(), degree, |n| {
        if tri.contains_lattice(n, interior_only) {
            out.push(cone.lattice_point(n.to_vec()));
        }
    });
    out.sort();
    out
}

/// Visits every integer vector `n` with
/// `<degree, n> = target` inside the bounding box of `target · conv(gens)`.
pub(crate) fn scan_degree_slice(
    gens: &[Vec<i64>],
    degree: &[i64],
    target: i64,
    mut visit: impl FnMut(&[i64]),
) {
    let r = degree.len();
    if r == 0 {
        if target == 0 {
            visit(&[]);
        }
        return;
    }
    if gens.is_empty() || target < 0 {
        return;
    }
    let lo: Vec<i64> =
        (0..r).map(|c| gens.iter().map(|g| g[c] * target).min().expect("nonempty")).collect();
    let hi: Vec<i64> =
        (0..r).map(|c| gens.iter().map(|g| g[c] * target).max().expect("nonempty")).collect();
    // The coordinate solved from the degree equation.
    let Some(solved) = (0..r).filter(|&c| degree[c] != 0).min_by_key(|&c| degree[c].abs()) else {
        return;
    };
    let free: Vec<usize> = (0..r).filter(|&c| c != solved).collect();
    let mut n = vec![0i64; r];
    for &c in &free {
        n[c] = lo[c];
    }
    loop {
        let partial: i64 = free.iter().map(|&c| degree[c] * n[c]).sum();
        let rest = target - partial;
        if rest % degree[solved] == 0 {
            let v = rest / degree[solved];
            if v >= lo[solved] && v <= hi[solved] {
                n[solved] = v;
                visit(&n);
            }
        }
        // Odometer increment over the free coordinates, last one fastest.
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            let c = free[pos];
            if n[c] < hi[c] {
                n[c] += 1;
                break;
            }
            n[c] = lo[c];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn index2() -> GradedCone {
        GradedCone::simplicial(vec![vec![1, 0], vec![1, 2]], vec![1, 0]).unwrap()
    }

    #[test]
    fn orthant_is_valid() {
        let report = GradedCone::orthant(2).validate();
        assert!(report.valid, "{report:?}");
        assert_eq!(report.points_sublattice_index.as_deref(), Some("1"));
    }

    #[test]
    fn line_is_not_pointed() {
        let cone = GradedCone::new(2, vec![vec![1, 0], vec![-1, 0]], vec![1, 0], vec![vec![1, 0], vec![-1, 0]])
            .unwrap();
        let report = cone.validate();
        assert!(!report.valid);
        let failed: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
        assert!(failed.contains(&"pointed"), "{failed:?}");
    }

    #[test]
    fn missing_ray_point_is_reported() {
        let cone = GradedCone::new(2, vec![vec![1, 0], vec![1, 2]], vec![1, 0], vec![vec![1, 0]]).unwrap();
        let report = cone.validate();
        let failed: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
        assert!(failed.contains(&"rays_among_points"), "{failed:?}");
    }

    #[test]
    fn index_two_cone_is_valid_with_sublattice_index_two() {
        let report = index2().validate();
        assert!(report.valid, "{report:?}");
        assert_eq!(report.points_sublattice_index.as_deref(), Some("2"));
    }

    #[test]
    fn interior_point_listed_as_ray_is_rejected() {
        let cone = GradedCone::new(
            2,
            vec![vec![1, 0], vec![1, 1], vec![1, 2]],
            vec![1, 0],
            vec![vec![1, 0], vec![1, 1], vec![1, 2]],
        )
        .unwrap();
        let failed: Vec<&str> = cone.validate().failures().iter().map(|c| c.name).collect();
        assert_eq!(failed, vec!["rays_extreme"]);
    }

    #[test]
    fn unlisted_extreme_point_is_rejected() {
        let cone = GradedCone::new(2, vec![vec![1, 0]], vec![1, 0], vec![vec![1, 0], vec![1, 2]]).unwrap();
        let failed: Vec<&str> = cone.validate().failures().iter().map(|c| c.name).collect();
        assert!(failed.contains(&"points_in_cone_of_rays"), "{failed:?}");
    }

    #[test]
    fn shape_errors() {
        assert!(GradedCone::new(2, vec![vec![1]], vec![1, 0], vec![]).is_err());
        assert!(GradedCone::new(2, vec![], vec![1], vec![]).is_err());
    }

    #[test]
    fn rank_zero_cone_is_valid() {
        let cone = GradedCone::new(0, vec![], vec![], vec![]).unwrap();
        assert!(cone.validate().valid);
    }

    #[test]
    fn slice_scan_counts() {
        let cone = index2();
        let mut count = 0;
        scan_degree_slice(cone.points(), cone.degree(), 2, |_| count += 1);
        // Bounding box x = 2, 0 ≤ y ≤ 4.
        assert_eq!(count, 5);
    }

    #[test]
    fn lattice_point_ordering() {
        let deg = [1, 1];
        let mut pts =
            [LatticePoint::new(vec![0, 2], &deg), LatticePoint::new(vec![1, 0], &deg), LatticePoint::new(vec![0, 1], &deg)];
        pts.sort();
        let coords: Vec<&[i64]> = pts.iter().map(LatticePoint::coords).collect();
        assert_eq!(coords, vec![&[0, 1][..], &[1, 0][..], &[0, 2][..]]);
    }
}
