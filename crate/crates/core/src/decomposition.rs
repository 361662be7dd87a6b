//! Box points of the maximal simplices and the decomposition of the lattice
//! points of `K` and `K^open` into translated simplicial semigroups.
//!
//! Fix a generic `ξ` in the interior of `K` with coordinates `β_{I,i}` in
//! each simplex `I`. For the `+ξ` side, `B_{I,ξ}` holds the lattice points
//! `Σ γ_i e_i` with `γ_i ∈ [0,1)` when `β_{I,i} > 0` and `γ_i ∈ (0,1]` when
//! `β_{I,i} < 0`; the `−ξ` side swaps the two windows. Every lattice point of
//! `K` (resp. `K^open`) is uniquely `b + Σ_{i∈I} l_i e_i` with `b ∈ B_{I,±ξ}`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::compositions;
use crate::cone::{lattice_points_up_to_degree, scan_degree_slice, LatticePoint};
use crate::exactmath::{perturbed, to_rational, EpsNumber, Rational};
use crate::triangulation::Triangulation;
use crate::Error;

/// Which side of the decomposition: `+ξ` decomposes `K ∩ N`, `−ξ`
/// decomposes `K^open ∩ N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+xi")]
    Plus,
    #[serde(rename = "-xi")]
    Minus,
}

impl Sign {
    pub fn factor(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn interior(self) -> bool {
        self == Sign::Minus
    }
}

/// A direction `ξ ∈ K^open` together with its coordinates `β_{I,i}` in every
/// maximal simplex, all nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericDirection {
    xi: Vec<Rational>,
    betas: Vec<Vec<Rational>>,
}

impl GenericDirection {
    pub fn new(tri: &Triangulation, xi: Vec<Rational>) -> Result<Self, Error> {
        if xi.len() != tri.cone().rank() {
            return Err(Error::InvalidInput(format!("xi has length {}, expected {}", xi.len(), tri.cone().rank())));
        }
        if !tri.contains(&xi, true) {
            return Err(Error::NonGenericDirection("xi is not in the interior of the cone".into()));
        }
        let betas: Vec<Vec<Rational>> = tri.simplices().iter().map(|s| s.coordinates(&xi)).collect();
        for (s, b) in tri.simplices().iter().zip(&betas) {
            if let Some(pos) = b.iter().position(Zero::is_zero) {
                return Err(Error::NonGenericDirection(format!(
                    "coordinate of xi along point {} in simplex {:?} vanishes",
                    s.indices()[pos],
                    s.indices()
                )));
            }
        }
        Ok(GenericDirection { xi, betas })
    }

    /// Samples `ξ = Σ c_i e_i` with small positive rational `c_i`, retrying
    /// until all `β` are nonzero. Deterministic in `seed`; returns the number
    /// of attempts used.
    pub fn choose(tri: &Triangulation, seed: u64, attempts: usize) -> Result<(Self, usize), Error> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = tri.cone().points();
        let r = tri.cone().rank();
        let mut last = String::new();
        for attempt in 1..=attempts {
            let mut xi = vec![Rational::zero(); r];
            for p in points {
                let c = Rational::new(rng.gen_range(1..=97), rng.gen_range(1..=11));
                for (x, &v) in xi.iter_mut().zip(p) {
                    *x += &c * &Rational::integer(v);
                }
            }
            match GenericDirection::new(tri, xi) {
                Ok(d) => return Ok((d, attempt)),
                Err(e) => last = e.to_string(),
            }
        }
        Err(Error::RetriesExhausted { what: "generic direction", seed, attempts, last })
    }

    pub fn xi(&self) -> &[Rational] {
        &self.xi
    }

    /// `β_{I,i}` for simplex `simplex`, in the order of its indices.
    pub fn betas(&self, simplex: usize) -> &[Rational] {
        &self.betas[simplex]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxPoint {
    pub point: LatticePoint,
    pub gamma: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxSet {
    pub simplex: usize,
    pub sign: Sign,
    pub points: Vec<BoxPoint>,
}

/// Whether `gamma` lies in the half-open window selected by the signs of
/// the effective `β` (already multiplied by the side's sign).
fn in_window(gamma: &Rational, effective_beta: &Rational) -> bool {
    let one = Rational::integer(1);
    if effective_beta.is_positive() {
        !gamma.is_negative() && *gamma < one
    } else {
        gamma.is_positive() && *gamma <= one
    }
}

/// Enumerates `B_{I,±ξ}` by scanning lattice points of degree at most `r`
/// in the bounding box of the simplex and testing the `γ`-window exactly.
pub fn box_points(tri: &Triangulation, dir: &GenericDirection, simplex: usize, sign: Sign) -> BoxSet {
    let cone = tri.cone();
    let s = tri.simplex(simplex);
    let gens: Vec<Vec<i64>> = s.indices().iter().map(|&i| cone.points()[i].clone()).collect();
    let betas: Vec<Rational> =
        dir.betas(simplex).iter().map(|b| if sign == Sign::Minus { -b } else { b.clone() }).collect();
    let mut points = Vec::new();
    for l in 0..=cone.rank() as i64 {
        scan_degree_slice(&gens, cone.degree(), l, |n| {
            let gamma = s.coordinates(&to_rational(n));
            if gamma.iter().zip(&betas).all(|(g, b)| in_window(g, b)) {
                points.push(BoxPoint { point: cone.lattice_point(n.to_vec()), gamma });
            }
        });
    }
    BoxSet { simplex, sign, points }
}

/// `n = base + Σ_{i ∈ simplex} multiplicities[k] · e_{indices[k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointDecomposition {
    pub simplex: usize,
    pub base: LatticePoint,
    pub multiplicities: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PartitionReport {
    pub sign: Sign,
    pub max_degree: i64,
    pub domain_points: usize,
    pub generated_points: usize,
    pub duplicates: Vec<LatticePoint>,
    pub missing: Vec<LatticePoint>,
    pub extraneous: Vec<LatticePoint>,
    pub decomposition_failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalityReport {
    pub point: LatticePoint,
    pub sign: Sign,
    pub canonical: PointDecomposition,
    pub representations: usize,
    pub equalities: usize,
    pub violations: Vec<String>,
    pub passed: bool,
}

/// The triangulation, a generic direction, and the box sets for both signs.
#[derive(Clone, Debug)]
pub struct BoxDecomposition {
    tri: Triangulation,
    dir: GenericDirection,
    plus: Vec<BoxSet>,
    minus: Vec<BoxSet>,
}

impl BoxDecomposition {
    pub fn new(tri: Triangulation, dir: GenericDirection) -> Self {
        let n = tri.simplices().len();
        let plus = (0..n).map(|i| box_points(&tri, &dir, i, Sign::Plus)).collect();
        let minus = (0..n).map(|i| box_points(&tri, &dir, i, Sign::Minus)).collect();
        BoxDecomposition { tri, dir, plus, minus }
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn direction(&self) -> &GenericDirection {
        &self.dir
    }

    pub fn box_sets(&self, sign: Sign) -> &[BoxSet] {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    /// All box points of one side, sorted by degree then coordinates.
    /// Distinct simplices never share a box point.
    pub fn all_box_points(&self, sign: Sign) -> Vec<LatticePoint> {
        let mut v: Vec<LatticePoint> =
            self.box_sets(sign).iter().flat_map(|b| b.points.iter().map(|p| p.point.clone())).collect();
        v.sort();
        v
    }

    /// Splits `n` into a box point and multiplicities by locating `n ± εξ`.
    pub fn decompose(&self, n: &[i64], sign: Sign) -> Result<PointDecomposition, Error> {
        let cone = self.tri.cone();
        if n.len() != cone.rank() {
            return Err(Error::InvalidInput(format!("point {n:?} has wrong length")));
        }
        let p = perturbed(&to_rational(n), self.dir.xi(), sign.factor());
        let loc = self.tri.locate(&p).map_err(|e| match e {
            Error::NotInAnySimplex => Error::PointNotInDomain(format!("{n:?} for side {sign:?}")),
            other => other,
        })?;
        let s = self.tri.simplex(loc.simplex);
        let mut base = n.to_vec();
        let mut multiplicities = Vec::with_capacity(s.indices().len());
        for (coord, &i) in loc.coordinates.iter().zip(s.indices()) {
            // The slope of each coordinate is the signed β.
            let l = if coord.slope.is_positive() { coord.constant.floor() } else { coord.constant.ceil() - 1 };
            let l = l.to_i64().expect("multiplicity fits in i64");
            debug_assert!(l >= 0);
            for (b, &e) in base.iter_mut().zip(&cone.points()[i]) {
                *b -= l * e;
            }
            multiplicities.push(l);
        }
        Ok(PointDecomposition { simplex: loc.simplex, base: cone.lattice_point(base), multiplicities })
    }

    /// Brute-force certificate that the translated semigroups partition the
    /// lattice points of degree at most `max_degree` of `K` (`+ξ`) or of
    /// `K^open` (`−ξ`).
    pub fn verify_partition(&self, max_degree: i64, sign: Sign) -> PartitionReport {
        let cone = self.tri.cone();
        let domain = lattice_points_up_to_degree(&self.tri, max_degree, sign.interior());

        let mut failures = Vec::new();
        for n in &domain {
            match self.decompose(n.coords(), sign) {
                Ok(d) => {
                    let mut recon = d.base.coords().to_vec();
                    for (&l, &i) in d.multiplicities.iter().zip(self.tri.simplex(d.simplex).indices()) {
                        for (x, &e) in recon.iter_mut().zip(&cone.points()[i]) {
                            *x += l * e;
                        }
                    }
                    let in_box = self.box_sets(sign)[d.simplex].points.iter().any(|b| b.point == d.base);
                    if recon != n.coords() || !in_box || d.multiplicities.iter().any(|&l| l < 0) {
                        failures.push(format!("{n}: inconsistent decomposition {d:?}"));
                    }
                }
                Err(e) => failures.push(format!("{n}: {e}")),
            }
        }

        let mut counts: BTreeMap<LatticePoint, usize> = BTreeMap::new();
        let r = cone.rank();
        for set in self.box_sets(sign) {
            let gens: Vec<&Vec<i64>> =
                self.tri.simplex(set.simplex).indices().iter().map(|&i| &cone.points()[i]).collect();
            for b in &set.points {
                let budget = max_degree - b.point.degree();
                for total in 0..=budget.max(-1) {
                    for ls in compositions(total as usize, r) {
                        let mut v = b.point.coords().to_vec();
                        for (l, g) in ls.iter().zip(&gens) {
                            for (x, &e) in v.iter_mut().zip(g.iter()) {
                                *x += *l as i64 * e;
                            }
                        }
                        *counts.entry(cone.lattice_point(v)).or_default() += 1;
                    }
                }
            }
        }
        let domain_set: HashMap<&LatticePoint, ()> = domain.iter().map(|p| (p, ())).collect();
        let duplicates: Vec<LatticePoint> = counts.iter().filter(|(_, &c)| c > 1).map(|(p, _)| p.clone()).collect();
        let extraneous: Vec<LatticePoint> =
            counts.keys().filter(|p| !domain_set.contains_key(p)).cloned().collect();
        let missing: Vec<LatticePoint> = domain.iter().filter(|p| !counts.contains_key(*p)).cloned().collect();
        let passed = duplicates.is_empty() && extraneous.is_empty() && missing.is_empty() && failures.is_empty();
        PartitionReport {
            sign,
            max_degree,
            domain_points: domain.len(),
            generated_points: counts.values().sum(),
            duplicates,
            missing,
            extraneous,
            decomposition_failures: failures,
            passed,
        }
    }

    /// Exhaustively enumerates every representation `n = b + Σ_j k_j e_j`
    /// with `b` a box point of the given side and `k_j ≥ 0`, and checks
    ///
    /// `ψ(n ± εξ) ≤ ψ(b ± εξ) + Σ_j k_j ψ(e_j)`
    ///
    /// in the ε-order, with equality exactly at the canonical decomposition.
    /// (`ψ` here is the maximum of its linear pieces; for the superadditive
    /// function `−ψ` this is the reversed inequality.)
    pub fn verify_psi_minimality(&self, n: &[i64], sign: Sign) -> Result<MinimalityReport, Error> {
        let cone = self.tri.cone();
        let point = cone.lattice_point(n.to_vec());
        let canonical = self.decompose(n, sign)?;
        let d = cone.points().len();
        let heights = &self.tri.heights().0;
        let psi_at = |v: &[i64]| -> Result<EpsNumber, Error> {
            self.tri.psi_value(&perturbed(&to_rational(v), self.dir.xi(), sign.factor()))
        };
        let lhs = psi_at(n)?;

        let mut canonical_k = vec![0i64; d];
        for (&l, &i) in canonical.multiplicities.iter().zip(self.tri.simplex(canonical.simplex).indices()) {
            canonical_k[i] = l;
        }

        let mut representations = 0;
        let mut equalities = 0;
        let mut violations = Vec::new();
        let mut seen_canonical = false;
        for b in self.all_box_points(sign) {
            let budget = point.degree() - b.degree();
            if budget < 0 {
                continue;
            }
            let target: Vec<i64> = n.iter().zip(b.coords()).map(|(x, y)| x - y).collect();
            let psi_b = psi_at(b.coords())?;
            for k in compositions(budget as usize, d) {
                let mut v = vec![0i64; n.len()];
                for (kj, e) in k.iter().zip(cone.points()) {
                    for (x, &c) in v.iter_mut().zip(e) {
                        *x += *kj as i64 * c;
                    }
                }
                if v != target {
                    continue;
                }
                representations += 1;
                let mut rhs = psi_b.clone();
                for (kj, h) in k.iter().zip(heights) {
                    rhs.constant += &Rational::integer(*kj as i64) * h;
                }
                let k_i64: Vec<i64> = k.iter().map(|&x| x as i64).collect();
                let is_canonical = b == canonical.base && k_i64 == canonical_k;
                seen_canonical |= is_canonical;
                match lhs.cmp(&rhs) {
                    std::cmp::Ordering::Greater => {
                        violations.push(format!("b={b}, k={k_i64:?}: ψ(n)={lhs} exceeds {rhs}"))
                    }
                    std::cmp::Ordering::Equal => {
                        equalities += 1;
                        if !is_canonical {
                            violations.push(format!("b={b}, k={k_i64:?}: equality away from the canonical decomposition"));
                        }
                    }
                    std::cmp::Ordering::Less => {
                        if is_canonical {
                            violations.push("strict inequality at the canonical decomposition".to_string());
                        }
                    }
                }
            }
        }
        if !seen_canonical {
            violations.push("canonical decomposition not found among representations".to_string());
        }
        let passed = violations.is_empty();
        Ok(MinimalityReport { point, sign, canonical, representations, equalities, violations, passed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::GradedCone;
    use crate::triangulation::Heights;

    fn q(v: i64) -> Rational {
        Rational::integer(v)
    }

    fn index2() -> Triangulation {
        let cone = GradedCone::simplicial(vec![vec![1, 0], vec![1, 2]], vec![1, 0]).unwrap();
        Triangulation::build(&cone, &Heights::from_integers(&[0, 0])).unwrap()
    }

    fn square() -> Triangulation {
        let pts = vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![1, 1, 1]];
        let cone = GradedCone::new(3, pts.clone(), vec![1, 0, 0], pts).unwrap();
        Triangulation::build(&cone, &Heights::from_integers(&[0, 0, 0, 1])).unwrap()
    }

    fn coords(set: &BoxSet) -> Vec<Vec<i64>> {
        set.points.iter().map(|b| b.point.coords().to_vec()).collect()
    }

    #[test]
    fn orthant_xi_betas() {
        let tri = Triangulation::build(&GradedCone::orthant(2), &Heights::from_integers(&[0, 0])).unwrap();
        let dir = GenericDirection::new(&tri, vec![q(1), q(2)]).unwrap();
        assert_eq!(dir.betas(0), &[q(1), q(2)]);
    }

    #[test]
    fn index2_xi_betas() {
        let dir = GenericDirection::new(&index2(), vec![q(1), q(1)]).unwrap();
        let half = Rational::new(1, 2);
        assert_eq!(dir.betas(0), &[half.clone(), half]);
    }

    #[test]
    fn wall_xi_is_rejected_and_choose_resamples() {
        let tri = square();
        // e2 + e3 = (2,1,1) lies on the wall between the two simplices.
        let err = GenericDirection::new(&tri, vec![q(2), q(1), q(1)]).unwrap_err();
        assert!(matches!(err, Error::NonGenericDirection(_)));
        let (dir, _) = GenericDirection::choose(&tri, 11, 50).unwrap();
        for s in 0..tri.simplices().len() {
            assert!(dir.betas(s).iter().all(|b| !b.is_zero()));
        }
        let again = GenericDirection::choose(&tri, 11, 50).unwrap().0;
        assert_eq!(dir, again);
    }

    #[test]
    fn boundary_xi_is_rejected() {
        let tri = index2();
        assert!(GenericDirection::new(&tri, vec![q(1), q(0)]).is_err());
    }

    #[test]
    fn orthant_box_points() {
        let tri = Triangulation::build(&GradedCone::orthant(2), &Heights::from_integers(&[0, 0])).unwrap();
        let dir = GenericDirection::new(&tri, vec![q(1), q(2)]).unwrap();
        assert_eq!(coords(&box_points(&tri, &dir, 0, Sign::Plus)), vec![vec![0, 0]]);
        let minus = box_points(&tri, &dir, 0, Sign::Minus);
        assert_eq!(coords(&minus), vec![vec![1, 1]]);
        assert_eq!(minus.points[0].point.degree(), 2);
    }

    #[test]
    fn index2_box_points() {
        let tri = index2();
        let dir = GenericDirection::new(&tri, vec![q(1), q(1)]).unwrap();
        assert_eq!(coords(&box_points(&tri, &dir, 0, Sign::Plus)), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(coords(&box_points(&tri, &dir, 0, Sign::Minus)), vec![vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn decompose_examples() {
        let tri = Triangulation::build(&GradedCone::orthant(2), &Heights::from_integers(&[0, 0])).unwrap();
        let dir = GenericDirection::new(&tri, vec![q(1), q(2)]).unwrap();
        let bd = BoxDecomposition::new(tri, dir);
        let d = bd.decompose(&[2, 3], Sign::Plus).unwrap();
        assert_eq!(d.base.coords(), &[0, 0]);
        assert_eq!(d.multiplicities, vec![2, 3]);
        assert!(matches!(bd.decompose(&[0, 3], Sign::Minus), Err(Error::PointNotInDomain(_))));
        assert!(matches!(bd.decompose(&[-1, 3], Sign::Plus), Err(Error::PointNotInDomain(_))));

        let tri = index2();
        let dir = GenericDirection::new(&tri, vec![q(1), q(1)]).unwrap();
        let bd = BoxDecomposition::new(tri, dir);
        let d = bd.decompose(&[1, 1], Sign::Plus).unwrap();
        assert_eq!((d.base.coords(), d.multiplicities.as_slice()), (&[1, 1][..], &[0, 0][..]));
        let d = bd.decompose(&[2, 2], Sign::Plus).unwrap();
        assert_eq!((d.base.coords(), d.multiplicities.as_slice()), (&[0, 0][..], &[1, 1][..]));
        let d = bd.decompose(&[2, 2], Sign::Minus).unwrap();
        assert_eq!((d.base.coords(), d.multiplicities.as_slice()), (&[2, 2][..], &[0, 0][..]));
    }

    #[test]
    fn decompose_is_identity_on_box_points() {
        let tri = square();
        let (dir, _) = GenericDirection::choose(&tri, 3, 50).unwrap();
        let bd = BoxDecomposition::new(tri, dir);
        for sign in [Sign::Plus, Sign::Minus] {
            for set in bd.box_sets(sign) {
                for b in &set.points {
                    let d = bd.decompose(b.point.coords(), sign).unwrap();
                    assert_eq!(d.simplex, set.simplex);
                    assert_eq!(d.base, b.point);
                    assert!(d.multiplicities.iter().all(|&l| l == 0));
                }
            }
        }
    }

    #[test]
    fn partition_counts() {
        let tri = Triangulation::build(&GradedCone::orthant(2), &Heights::from_integers(&[0, 0])).unwrap();
        let dir = GenericDirection::new(&tri, vec![q(1), q(2)]).unwrap();
        let report = BoxDecomposition::new(tri, dir).verify_partition(4, Sign::Plus);
        assert!(report.passed, "{report:?}");
        assert_eq!(report.domain_points, 15);

        let tri = index2();
        let dir = GenericDirection::new(&tri, vec![q(1), q(1)]).unwrap();
        let report = BoxDecomposition::new(tri, dir).verify_partition(4, Sign::Plus);
        assert!(report.passed, "{report:?}");
        assert_eq!(report.domain_points, 25);

        let tri = square();
        let (dir, _) = GenericDirection::choose(&tri, 5, 50).unwrap();
        let bd = BoxDecomposition::new(tri, dir);
        let report = bd.verify_partition(3, Sign::Plus);
        assert!(report.passed, "{report:?}");
        assert_eq!(report.domain_points, 30);
        let interior = bd.verify_partition(3, Sign::Minus);
        assert!(interior.passed, "{interior:?}");
        // Interior points of degree d: (d-1)^2.
        assert_eq!(interior.domain_points, 5);
    }

    #[test]
    fn psi_minimality_examples() {
        let tri = Triangulation::build(&GradedCone::orthant(2), &Heights::from_integers(&[0, 0])).unwrap();
        let dir = GenericDirection::new(&tri, vec![q(1), q(2)]).unwrap();
        let rep = BoxDecomposition::new(tri, dir).verify_psi_minimality(&[1, 1], Sign::Plus).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.representations, 1);

        let tri = index2();
        let dir = GenericDirection::new(&tri, vec![q(1), q(1)]).unwrap();
        let rep = BoxDecomposition::new(tri, dir).verify_psi_minimality(&[2, 2], Sign::Plus).unwrap();
        assert!(rep.passed, "{rep:?}");
        // (2,2) = 0 + e1 + e2 only; (1,1) + k·e would need a degree-1 vector (1,1).
        assert_eq!(rep.representations, 1);
        assert_eq!(rep.equalities, 1);

        let tri = square();
        let dir = GenericDirection::new(&tri, vec![q(5), q(2), q(1)]).unwrap();
        let bd = BoxDecomposition::new(tri, dir);
        let rep = bd.verify_psi_minimality(&[2, 1, 1], Sign::Plus).unwrap();
        assert!(rep.passed, "{rep:?}");
        // e2 + e3 and e1 + e4 from the origin, plus one from the degree-1 box point.
        assert_eq!(rep.representations, 3);
        assert_eq!(rep.equalities, 1);
    }
}
