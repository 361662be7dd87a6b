//! The functional `φ` on the top degree of `R^open/ZR^open` and the pairing
//! matrices between `(R/ZR)_l` and `(R^open/ZR^open)_{r−l}`.

use serde::Serialize;

use crate::cone::LatticePoint;
use crate::exactmath::{RatMatrix, Rational};
use crate::quotient::{Flavor, QuotientPresentation};
use crate::Error;

/// `P_l[b, b'] = φ(x^{b+b'})` with rows the box basis of `(R/ZR)_l` and
/// columns the box basis of `(R^open/ZR^open)_{r−l}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingMatrix {
    pub degree: usize,
    pub rows: Vec<LatticePoint>,
    pub cols: Vec<LatticePoint>,
    pub entries: Vec<Vec<Rational>>,
}

impl PairingMatrix {
    pub fn matrix(&self) -> RatMatrix {
        if self.rows.is_empty() {
            return RatMatrix::zeros(0, self.cols.len());
        }
        RatMatrix::from_rows(self.entries.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairingData {
    pub rank: usize,
    /// The interior box point of degree `r`; `φ` takes the value 1 on it and
    /// vanishes on every lower degree.
    pub socle: LatticePoint,
    pub matrices: Vec<PairingMatrix>,
}

impl PairingData {
    /// `φ` of an interior monomial class; zero below degree `r`.
    pub fn phi(&self, open: &QuotientPresentation, n: &[i64]) -> Result<Rational, Error> {
        let nf = open.normal_form(n)?;
        if open.slice(self.rank).position(n).is_some() {
            Ok(nf[0].clone())
        } else {
            Ok(Rational::integer(0))
        }
    }
}

pub fn build_pairing(ring: &QuotientPresentation, open: &QuotientPresentation) -> Result<PairingData, Error> {
    if ring.flavor != Flavor::R || open.flavor != Flavor::ROpen {
        return Err(Error::InvalidInput("pairing needs an R and an R^open presentation".into()));
    }
    let r = ring.rank();
    if open.rank() != r || (ring.max_degree as usize) < r || (open.max_degree as usize) < r {
        return Err(Error::InvalidInput(format!("presentations must share rank {r} and reach degree {r}")));
    }
    for p in [ring, open] {
        if !p.is_certified() {
            return Err(Error::PresentationNotCertified(format!(
                "{:?} quotient dimensions {} differ from box counts {}",
                p.flavor,
                p.dimensions.final_polynomial(),
                p.expected
            )));
        }
    }
    let top = &open.basis[r];
    if top.len() != 1 {
        return Err(Error::PresentationNotCertified(format!(
            "top degree of the interior quotient has dimension {}, not 1",
            top.len()
        )));
    }
    let socle = top[0].clone();
    let mut matrices = Vec::with_capacity(r + 1);
    for l in 0..=r {
        let rows = ring.basis[l].clone();
        let cols = open.basis[r - l].clone();
        let mut entries = Vec::with_capacity(rows.len());
        for b in &rows {
            let mut row = Vec::with_capacity(cols.len());
            for c in &cols {
                let m: Vec<i64> = b.coords().iter().zip(c.coords()).map(|(x, y)| x + y).collect();
                row.push(open.normal_form(&m)?.swap_remove(0));
            }
            entries.push(row);
        }
        matrices.push(PairingMatrix { degree: l, rows, cols, entries });
    }
    Ok(PairingData { rank: r, socle, matrices })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeRank {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NondegeneracyReport {
    pub passed: bool,
    pub ranks: Vec<DegreeRank>,
    pub degenerate_degrees: Vec<usize>,
}

/// Every `P_l` must be square and of full rank over `ℚ`.
pub fn check_nondegeneracy(data: &PairingData) -> NondegeneracyReport {
    let mut ranks = Vec::new();
    let mut degenerate_degrees = Vec::new();
    for p in &data.matrices {
        let (rows, cols) = (p.rows.len(), p.cols.len());
        let rank = p.matrix().rank();
        if rows != cols || rank != rows {
            degenerate_degrees.push(p.degree);
        }
        ranks.push(DegreeRank { degree: p.degree, rows, cols, rank });
    }
    NondegeneracyReport { passed: degenerate_degrees.is_empty(), ranks, degenerate_degrees }
}
