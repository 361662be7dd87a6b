//! Degree-truncated models of `R = ℂ[K]` and `R^open = ℂ[K^open]`, the linear
//! forms `Z_j`, quotient dimensions by prefixes `Z_1, ..., Z_k`, and normal
//! forms onto the box-monomial basis.
//!
//! The coefficients of the `Z_j` are random nonzero rationals; genericity is
//! certified after the fact by matching the quotient dimensions against the
//! box counts, and presentations are reseeded when the match fails.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::cone::{lattice_points_of_degree, LatticePoint};
use crate::decomposition::{BoxDecomposition, Sign};
use crate::exactmath::modular::{self, ModEchelon};
use crate::exactmath::{RatMatrix, Rational, SparseEchelon, SparseVec};
use crate::series::{s_polynomial, t_polynomial, GradedPolynomial};
use crate::triangulation::Triangulation;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Flavor {
    R,
    #[serde(rename = "Ropen")]
    ROpen,
}

impl Flavor {
    pub fn sign(self) -> Sign {
        match self {
            Flavor::R => Sign::Plus,
            Flavor::ROpen => Sign::Minus,
        }
    }

    fn interior(self) -> bool {
        self == Flavor::ROpen
    }
}

/// The monomial basis `x^n` of one graded piece, in lexicographic order.
#[derive(Clone, Debug, Serialize)]
pub struct GradedSlice {
    pub degree: i64,
    pub monomials: Vec<LatticePoint>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

impl GradedSlice {
    pub fn new(tri: &Triangulation, degree: i64, flavor: Flavor) -> Self {
        let monomials = lattice_points_of_degree(tri, degree, flavor.interior());
        let index = monomials.iter().enumerate().map(|(i, m)| (m.coords().to_vec(), i)).collect();
        GradedSlice { degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, n: &[i64]) -> Option<usize> {
        self.index.get(n).copied()
    }
}

pub fn build_slices(tri: &Triangulation, max_degree: i64, flavor: Flavor) -> Vec<GradedSlice> {
    (0..=max_degree).map(|l| GradedSlice::new(tri, l, flavor)).collect()
}

/// `Z_j = Σ_i ⟨m_j, e_i⟩ c_i x_i` with `m_j` the `j`-th standard dual vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearFormZ {
    pub index: usize,
    pub dual_vector: Vec<i64>,
    pub coefficients: Vec<Rational>,
}

impl LinearFormZ {
    /// `(i, ⟨m_j, e_i⟩ c_i)` for the points with a nonzero term.
    pub fn terms(&self, points: &[Vec<i64>]) -> Vec<(usize, Rational)> {
        points
            .iter()
            .enumerate()
            .filter(|(_, e)| e[self.index] != 0)
            .map(|(i, e)| (i, &Rational::integer(e[self.index]) * &self.coefficients[i]))
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .collect()
    }
}

/// Forms for explicit coefficients `c_i`. Zero coefficients are accepted so
/// that degenerate choices can be examined.
pub fn forms_from_coefficients(points: &[Vec<i64>], rank: usize, c: Vec<Rational>) -> Vec<LinearFormZ> {
    assert_eq!(c.len(), points.len(), "one coefficient per point");
    (0..rank)
        .map(|j| {
            let mut m = vec![0; rank];
            m[j] = 1;
            LinearFormZ { index: j, dual_vector: m, coefficients: c.clone() }
        })
        .collect()
}

/// Distinct nonzero integers in `[-1000, 1000]`, deterministic in `seed`.
pub fn random_coefficients(count: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<i64> = Vec::with_capacity(count);
    while out.len() < count {
        let v: i64 = rng.gen_range(1..=1000) * if rng.gen_bool(0.5) { 1 } else { -1 };
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out.into_iter().map(Rational::integer).collect()
}

pub fn make_forms(tri: &Triangulation, seed: u64) -> Vec<LinearFormZ> {
    let cone = tri.cone();
    forms_from_coefficients(cone.points(), cone.rank(), random_coefficients(cone.points().len(), seed))
}

/// The specialization `c_i = q^{ψ(e_i)}`; needs integer heights.
pub fn make_forms_q(tri: &Triangulation, q: &Rational) -> Result<Vec<LinearFormZ>, Error> {
    if num_traits::Zero::is_zero(q) {
        return Err(Error::InvalidInput("q must be nonzero".into()));
    }
    let c = tri
        .heights()
        .0
        .iter()
        .map(|h| {
            h.to_i64()
                .and_then(|e| i32::try_from(e).ok())
                .map(|e| q.pow(e))
                .ok_or_else(|| Error::InvalidInput(format!("q-mode needs small integer heights, got {h}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cone = tri.cone();
    Ok(forms_from_coefficients(cone.points(), cone.rank(), c))
}

/// Sparse images `Z · x^n` in `target` for every monomial of `source`.
fn images(source: &GradedSlice, target: &GradedSlice, z: &LinearFormZ, points: &[Vec<i64>]) -> Vec<SparseVec> {
    let terms = z.terms(points);
    source
        .monomials
        .iter()
        .map(|n| {
            let mut v: SparseVec = terms
                .iter()
                .map(|(i, c)| {
                    let m: Vec<i64> = n.coords().iter().zip(&points[*i]).map(|(a, b)| a + b).collect();
                    let row = target.position(&m).expect("module is closed under multiplication by x_i");
                    (row, c.clone())
                })
                .collect();
            v.sort_by_key(|(r, _)| *r);
            v
        })
        .collect()
}

/// Multiplication by `z` from `source` (degree `l`) to `target` (degree
/// `l+1`): rows indexed by `target`, columns by `source`.
pub fn multiplication_matrix(source: &GradedSlice, target: &GradedSlice, z: &LinearFormZ, points: &[Vec<i64>]) -> RatMatrix {
    let mut m = RatMatrix::zeros(target.len(), source.len());
    for (col, v) in images(source, target, z, points).into_iter().enumerate() {
        for (row, c) in v {
            m[(row, col)] = c;
        }
    }
    m
}

/// `dims[k][l] = dim (M / (Z_1..Z_k) M)_l` for `k = 0..=r`, `l = 0..=D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientDimensions {
    pub flavor: Flavor,
    pub max_degree: i64,
    pub dims: Vec<Vec<i64>>,
    /// Degrees whose ranks were taken modulo a prime. Their dimensions are
    /// exact when `exact` is set and upper bounds otherwise (see
    /// [`quotient_dimensions`]).
    pub modular_degrees: Vec<usize>,
    pub exact: bool,
}

impl QuotientDimensions {
    /// Whether the entries of degree `l` are known exactly.
    pub fn is_exact_at(&self, l: usize) -> bool {
        self.exact || !self.modular_degrees.contains(&l)
    }

    pub fn rank(&self) -> usize {
        self.dims.len() - 1
    }

    /// `f_k(t)` truncated at the maximal degree.
    pub fn f(&self, k: usize) -> &[i64] {
        &self.dims[k]
    }

    pub fn final_polynomial(&self) -> GradedPolynomial {
        GradedPolynomial::new(self.dims[self.rank()].clone())
    }
}

/// One echelon for degree `l`, fed with the images of `Z_1`, then `Z_2`, and
/// so on; the quotient dimension is recorded after each prefix.
fn exact_degree(slices: &[GradedSlice], forms: &[LinearFormZ], points: &[Vec<i64>], l: usize) -> (Vec<i64>, SparseEchelon) {
    let slice = &slices[l];
    let mut ech = SparseEchelon::new(slice.len());
    let mut dims = vec![slice.len() as i64];
    for z in forms {
        if l > 0 && !ech.is_full() {
            for v in images(&slices[l - 1], slice, z, points) {
                ech.insert(&v);
                if ech.is_full() {
                    break;
                }
            }
        }
        dims.push((slice.len() - ech.rank()) as i64);
    }
    (dims, ech)
}

/// As [`exact_degree`] with ranks modulo [`modular::PRIME`]; `None` if some
/// coefficient has a denominator divisible by the prime.
fn modular_degree(slices: &[GradedSlice], forms: &[LinearFormZ], points: &[Vec<i64>], l: usize) -> Option<Vec<i64>> {
    let slice = &slices[l];
    let mut ech = ModEchelon::new(slice.len());
    let mut dims = vec![slice.len() as i64];
    for z in forms {
        if l > 0 && !ech.is_full() {
            for v in images(&slices[l - 1], slice, z, points) {
                let v = v.iter().map(|(i, c)| modular::rational_mod(c).map(|c| (*i, c))).collect::<Option<Vec<_>>>()?;
                ech.insert(&v);
                if ech.is_full() {
                    break;
                }
            }
        }
        dims.push((slice.len() - ech.rank()) as i64);
    }
    Some(dims)
}

fn transpose_dims(per_degree: Vec<Vec<i64>>, r: usize) -> Vec<Vec<i64>> {
    (0..=r).map(|k| per_degree.iter().map(|d| d[k]).collect()).collect()
}

/// Exact dimensions for every degree, with the echelons of the full prefix.
fn exact_dimensions(
    slices: &[GradedSlice],
    forms: &[LinearFormZ],
    points: &[Vec<i64>],
    flavor: Flavor,
) -> (QuotientDimensions, Vec<Option<SparseEchelon>>) {
    let (per_degree, echelons): (Vec<_>, Vec<_>) =
        (0..slices.len()).map(|l| exact_degree(slices, forms, points, l)).map(|(d, e)| (d, Some(e))).unzip();
    let dims = transpose_dims(per_degree, forms.len());
    (QuotientDimensions { flavor, max_degree: slices.len() as i64 - 1, dims, modular_degrees: Vec::new(), exact: true }, echelons)
}

/// Exact ranks up to degree `r`, ranks modulo a prime above it.
///
/// With `p`-integral coefficients the rank of each map modulo `p` is at most
/// its rank over `ℚ`, so the modular dimensions bound the true ones from
/// above. Over `ℚ`, for any coefficients, `f_k ≥ (1−t) f_{k−1}`
/// coefficientwise (the cokernel of `Z_k` from degree `l−1` to `l` has
/// dimension at least target minus source). If the bounds satisfy
/// `f_k = (1−t)^k f_0` for every `k`, induction on `k` squeezes the true
/// dimensions onto them. Otherwise modular degrees are recomputed exactly,
/// lowest first, until an exact entry breaks the identity; the degrees left
/// modular then hold upper bounds and `exact` is cleared.
fn mixed_dimensions(
    slices: &[GradedSlice],
    forms: &[LinearFormZ],
    points: &[Vec<i64>],
    flavor: Flavor,
) -> (QuotientDimensions, Vec<Option<SparseEchelon>>) {
    let r = forms.len();
    let mut per_degree = Vec::with_capacity(slices.len());
    let mut echelons = Vec::with_capacity(slices.len());
    let mut modular_degrees = Vec::new();
    for l in 0..slices.len() {
        if l <= r {
            let (d, e) = exact_degree(slices, forms, points, l);
            per_degree.push(d);
            echelons.push(Some(e));
        } else {
            match modular_degree(slices, forms, points, l) {
                Some(d) => {
                    per_degree.push(d);
                    echelons.push(None);
                    modular_degrees.push(l);
                }
                None => return exact_dimensions(slices, forms, points, flavor),
            }
        }
    }
    let mut dims = QuotientDimensions {
        flavor,
        max_degree: slices.len() as i64 - 1,
        dims: transpose_dims(per_degree, r),
        modular_degrees,
        exact: true,
    };
    if regularity_check(&dims).passed {
        return (dims, echelons);
    }
    dims.exact = false;
    while !dims.modular_degrees.is_empty() && regularity_check(&dims).passed {
        let l = dims.modular_degrees.remove(0);
        let (d, e) = exact_degree(slices, forms, points, l);
        for (k, v) in d.into_iter().enumerate() {
            dims.dims[k][l] = v;
        }
        echelons[l] = Some(e);
    }
    dims.exact = dims.modular_degrees.is_empty();
    (dims, echelons)
}

/// Quotient dimensions for every prefix and degree. Exact unless the
/// regularity identity fails, in which case some high degrees may hold upper
/// bounds (`exact` is false) but every reported failure is exact.
pub fn quotient_dimensions(slices: &[GradedSlice], forms: &[LinearFormZ], points: &[Vec<i64>], flavor: Flavor) -> QuotientDimensions {
    mixed_dimensions(slices, forms, points, flavor).0
}

/// Same values as [`quotient_dimensions`], computed over `ℚ` in every degree.
pub fn quotient_dimensions_exact(
    slices: &[GradedSlice],
    forms: &[LinearFormZ],
    points: &[Vec<i64>],
    flavor: Flavor,
) -> QuotientDimensions {
    exact_dimensions(slices, forms, points, flavor).0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularityFailure {
    pub prefix: usize,
    pub degree: usize,
    pub expected: i64,
    pub found: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularityReport {
    pub flavor: Flavor,
    pub max_degree: i64,
    pub passed: bool,
    pub first_failure: Option<RegularityFailure>,
}

/// `[t^l] (1−t)^k f`.
fn times_one_minus_t_pow(f: &[i64], k: usize, l: usize) -> i64 {
    (0..=k.min(l)).map(|j| if j % 2 == 0 { 1 } else { -1 } * binomial(k as i64, j as i64) * f[l - j]).sum()
}

/// Certifies `f_k = (1−t)^k f_0` through the truncation degree for every
/// prefix `k`; the first mismatch in (prefix, degree) order is reported.
/// Degrees holding only upper bounds are skipped.
pub fn regularity_check(dims: &QuotientDimensions) -> RegularityReport {
    let f0 = dims.f(0);
    let first_failure = (1..=dims.rank())
        .flat_map(|k| (0..f0.len()).map(move |l| (k, l)))
        .filter(|&(_, l)| dims.is_exact_at(l))
        .find_map(|(k, l)| {
            let expected = times_one_minus_t_pow(f0, k, l);
            let found = dims.dims[k][l];
            (expected != found).then_some(RegularityFailure { prefix: k, degree: l, expected, found })
        });
    RegularityReport { flavor: dims.flavor, max_degree: dims.max_degree, passed: first_failure.is_none(), first_failure }
}

/// Bounds that hold for any coefficients: `(1−t) f_k ≤ f_{k+1} ≤ f_k`
/// coefficientwise, since `Z_{k+1}` maps degree `l−1` into degree `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MonotoneReport {
    pub passed: bool,
    pub violations: Vec<String>,
}

pub fn monotone_check(dims: &QuotientDimensions) -> MonotoneReport {
    let mut violations = Vec::new();
    for k in 0..dims.rank() {
        let (fk, fk1) = (dims.f(k), dims.f(k + 1));
        for l in (0..fk.len()).filter(|&l| dims.is_exact_at(l) && (l == 0 || dims.is_exact_at(l - 1))) {
            let lower = times_one_minus_t_pow(fk, 1, l);
            if fk1[l] > fk[l] || fk1[l] < lower {
                violations.push(format!("prefix {}, degree {l}: {} outside [{lower}, {}]", k + 1, fk1[l], fk[l]));
            }
        }
    }
    MonotoneReport { passed: violations.is_empty(), violations }
}

/// Per-degree data to express any monomial class in the box basis.
#[derive(Clone, Debug)]
struct DegreeNormalForm {
    free_columns: Vec<usize>,
    /// Inverse of the box monomials' reductions restricted to the free
    /// columns; `None` when they fail to form a basis there.
    inverse: Option<RatMatrix>,
}

/// The truncated quotient of `R` or `R^open` with its certification data.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientPresentation {
    pub flavor: Flavor,
    pub max_degree: i64,
    pub forms: Vec<LinearFormZ>,
    pub dimensions: QuotientDimensions,
    /// Box monomials by degree.
    pub basis: Vec<Vec<LatticePoint>>,
    /// `S(t)` for `R`, `T(t)` for `R^open`.
    pub expected: GradedPolynomial,
    #[serde(skip)]
    slices: Vec<GradedSlice>,
    /// `None` for degrees certified through modular ranks, where the
    /// quotient vanishes.
    #[serde(skip)]
    echelons: Vec<Option<SparseEchelon>>,
    #[serde(skip)]
    normal_forms: Vec<DegreeNormalForm>,
}

impl QuotientPresentation {
    pub fn build(decomp: &BoxDecomposition, flavor: Flavor, forms: Vec<LinearFormZ>, max_degree: i64) -> Self {
        let tri = decomp.triangulation();
        let points = tri.cone().points();
        let slices = build_slices(tri, max_degree, flavor);
        let (dimensions, echelons) = mixed_dimensions(&slices, &forms, points, flavor);
        let mut basis = vec![Vec::new(); slices.len()];
        for b in decomp.all_box_points(flavor.sign()) {
            if let Some(v) = basis.get_mut(b.degree() as usize) {
                v.push(b);
            }
        }
        let expected = match flavor {
            Flavor::R => s_polynomial(decomp),
            Flavor::ROpen => t_polynomial(decomp),
        };
        let normal_forms = slices
            .iter()
            .zip(&echelons)
            .zip(&basis)
            .map(|((slice, ech), boxes)| match ech {
                Some(ech) => {
                    let free_columns = ech.free_columns();
                    let inverse = (free_columns.len() == boxes.len())
                        .then(|| {
                            let pos: HashMap<usize, usize> =
                                free_columns.iter().enumerate().map(|(i, &c)| (c, i)).collect();
                            let mut m = RatMatrix::zeros(boxes.len(), boxes.len());
                            for (col, b) in boxes.iter().enumerate() {
                                let idx = slice.position(b.coords()).expect("box point lies in the module");
                                for (c, v) in ech.reduce(&[(idx, Rational::integer(1))]) {
                                    m[(pos[&c], col)] = v;
                                }
                            }
                            m.inverse().ok()
                        })
                        .flatten();
                    DegreeNormalForm { free_columns, inverse }
                }
                None => {
                    let vanishes = dimensions.dims[dimensions.rank()][slice.degree as usize] == 0 && boxes.is_empty();
                    DegreeNormalForm { free_columns: Vec::new(), inverse: vanishes.then(|| RatMatrix::zeros(0, 0)) }
                }
            })
            .collect();
        QuotientPresentation { flavor, max_degree, forms, dimensions, basis, expected, slices, echelons, normal_forms }
    }

    /// Whether the quotient dimensions equal the box counts in every degree.
    pub fn is_certified(&self) -> bool {
        self.dimensions.exact && self.dimensions.final_polynomial() == self.expected && self.normal_forms.iter().all(|d| d.inverse.is_some())
    }

    pub fn certify(&self) -> Result<(), Error> {
        if self.is_certified() {
            Ok(())
        } else {
            Err(Error::NonGenericCoefficients(format!(
                "{:?} quotient has dimensions {} but box counts give {}",
                self.flavor,
                self.dimensions.final_polynomial(),
                self.expected
            )))
        }
    }

    /// Draws coefficients from `seed, seed+1, ...` until the presentation
    /// certifies. Returns the presentation and the number of attempts.
    pub fn build_certified(
        decomp: &BoxDecomposition,
        flavor: Flavor,
        max_degree: i64,
        seed: u64,
        attempts: usize,
    ) -> Result<(Self, usize), Error> {
        let mut last = String::new();
        for attempt in 0..attempts {
            let forms = make_forms(decomp.triangulation(), seed.wrapping_add(attempt as u64));
            let p = QuotientPresentation::build(decomp, flavor, forms, max_degree);
            match p.certify() {
                Ok(()) => return Ok((p, attempt + 1)),
                Err(e) => last = e.to_string(),
            }
        }
        Err(Error::RetriesExhausted { what: "generic coefficients", seed, attempts, last })
    }

    pub fn rank(&self) -> usize {
        self.forms.len()
    }

    pub fn slice(&self, degree: usize) -> &GradedSlice {
        &self.slices[degree]
    }

    /// Coefficients `α_b` with `x^n ≡ Σ α_b x^b` over the box monomials of
    /// degree `deg n`.
    pub fn normal_form(&self, n: &[i64]) -> Result<Vec<Rational>, Error> {
        let degree = self.dimensions_degree(n)?;
        let idx = self.slices[degree]
            .position(n)
            .ok_or_else(|| Error::PointNotInDomain(format!("{n:?} for the {:?} module", self.flavor)))?;
        self.normal_form_of(degree, &[(idx, Rational::integer(1))])
    }

    /// Normal form of an arbitrary element of one graded piece, given in the
    /// monomial basis of that slice.
    pub fn normal_form_of(&self, degree: usize, v: &[(usize, Rational)]) -> Result<Vec<Rational>, Error> {
        let nf = &self.normal_forms[degree];
        let inverse = nf.inverse.as_ref().ok_or_else(|| {
            Error::NonGenericCoefficients(format!("box monomials of degree {degree} do not form a basis"))
        })?;
        let Some(ech) = &self.echelons[degree] else {
            return Ok(Vec::new());
        };
        let reduced = ech.reduce(v);
        let mut rhs = vec![Rational::integer(0); nf.free_columns.len()];
        for (c, val) in reduced {
            let i = nf.free_columns.binary_search(&c).expect("fully reduced vectors live on free columns");
            rhs[i] = val;
        }
        Ok(inverse.mul_vec(&rhs))
    }

    fn dimensions_degree(&self, n: &[i64]) -> Result<usize, Error> {
        self.slices.iter().position(|s| s.position(n).is_some()).ok_or_else(|| {
            Error::PointNotInDomain(format!("{n:?} is outside the module or beyond degree {}", self.max_degree))
        })
    }
}
