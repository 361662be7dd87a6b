//! String-theoretic E-polynomials assembled from strata and the `S`
//! polynomials of their local cones.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cone::GradedCone;
use crate::decomposition::{BoxDecomposition, GenericDirection};
use crate::series::{s_polynomial, GradedPolynomial};
use crate::triangulation::{Heights, Triangulation};
use crate::Error;

/// `Σ a_{p,q} u^p v^q` with integer coefficients; serialized as a list of
/// `[p, q, a]` triples in increasing `(p, q)` order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePolynomial(BTreeMap<(u32, u32), i64>);

impl BivariatePolynomial {
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, i64)>) -> Self {
        let mut p = BivariatePolynomial::default();
        for (a, b, c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn one() -> Self {
        BivariatePolynomial::from_terms([(0, 0, 1)])
    }

    pub fn add_term(&mut self, p: u32, q: u32, a: i64) {
        let entry = self.0.entry((p, q)).or_insert(0);
        *entry += a;
        if *entry == 0 {
            self.0.remove(&(p, q));
        }
    }

    pub fn coeff(&self, p: u32, q: u32) -> i64 {
        self.0.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        self.0.iter().map(|(&(p, q), &a)| (p, q, a))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest `p + q` over the support; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.0.keys().map(|(p, q)| p + q).max()
    }

    pub fn add(&self, other: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (p, q, a) in other.terms() {
            out.add_term(p, q, a);
        }
        out
    }

    /// `self · s(uv)`.
    pub fn times_diagonal(&self, s: &GradedPolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::default();
        for (p, q, a) in self.terms() {
            for (k, &c) in s.coefficients().iter().enumerate() {
                out.add_term(p + k as u32, q + k as u32, a * c);
            }
        }
        out
    }
}

impl Serialize for BivariatePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for (p, q, a) in self.terms() {
            seq.serialize_element(&[p as i64, q as i64, a])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BivariatePolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let triples: Vec<(u32, u32, i64)> = Deserialize::deserialize(deserializer)?;
        Ok(BivariatePolynomial::from_terms(triples))
    }
}

/// A stratum `X_i`, locally `ℂ^{dim X − k_i} × U_{K_i}`. A missing cone
/// means the stratum is smooth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRecord {
    pub e_polynomial: BivariatePolynomial,
    pub local_cone: Option<GradedCone>,
    pub heights: Option<Heights>,
}

impl StratumRecord {
    pub fn smooth(e_polynomial: BivariatePolynomial) -> Self {
        StratumRecord { e_polynomial, local_cone: None, heights: None }
    }

    pub fn singular(e_polynomial: BivariatePolynomial, cone: GradedCone) -> Self {
        StratumRecord { e_polynomial, local_cone: Some(cone), heights: None }
    }

    pub fn local_rank(&self) -> usize {
        self.local_cone.as_ref().map_or(0, GradedCone::rank)
    }
}

/// `S_K(t)` of one local cone; rank zero and smooth strata give `1`.
/// Heights default to seeded random ones.
pub fn local_s_polynomial(cone: &GradedCone, heights: Option<&Heights>, seed: u64) -> Result<GradedPolynomial, Error> {
    if cone.rank() == 0 {
        return Ok(GradedPolynomial::new(vec![1]));
    }
    cone.ensure_valid()?;
    let tri = match heights {
        Some(h) => Triangulation::build(cone, h)?,
        None => Triangulation::build_random(cone, seed, 20)?.0,
    };
    let (dir, _) = GenericDirection::choose(&tri, seed, 20)?;
    Ok(s_polynomial(&BoxDecomposition::new(tri, dir)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StringyResult {
    pub local_s_polynomials: Vec<GradedPolynomial>,
    pub e_st: BivariatePolynomial,
    pub hodge_numbers: BivariatePolynomial,
}

/// `E_st = Σ_i E(X_i; u, v) · S_{K_i}(uv)`. When `dimension` is given, each
/// `E(X_i)` must have total degree at most `2 · dimension`.
pub fn string_e_polynomial(strata: &[StratumRecord], dimension: Option<u32>, seed: u64) -> Result<StringyResult, Error> {
    let mut e_st = BivariatePolynomial::default();
    let mut local = Vec::with_capacity(strata.len());
    for (i, s) in strata.iter().enumerate() {
        if let (Some(dim), Some(deg)) = (dimension, s.e_polynomial.total_degree()) {
            if deg > 2 * dim {
                return Err(Error::InvalidInput(format!(
                    "stratum {i}: E-polynomial has total degree {deg} above 2·{dim}"
                )));
            }
        }
        let sk = match &s.local_cone {
            None => GradedPolynomial::new(vec![1]),
            Some(cone) => local_s_polynomial(cone, s.heights.as_ref(), seed)?,
        };
        e_st = e_st.add(&s.e_polynomial.times_diagonal(&sk));
        local.push(sk);
    }
    let hodge_numbers = string_hodge_numbers(&e_st);
    Ok(StringyResult { local_s_polynomials: local, e_st, hodge_numbers })
}

/// `h^{p,q}_st = (−1)^{p+q} a_{p,q}`.
pub fn string_hodge_numbers(e: &BivariatePolynomial) -> BivariatePolynomial {
    BivariatePolynomial::from_terms(e.terms().map(|(p, q, a)| (p, q, if (p + q) % 2 == 0 { a } else { -a })))
}
