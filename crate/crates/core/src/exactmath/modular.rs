//! Arithmetic modulo the Mersenne prime `2^61 − 1` and an incremental
//! echelon over it.
//!
//! For an integer matrix the rank modulo a prime never exceeds the rank
//! over the rationals, so ranks computed here are lower bounds.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Rational;

pub const PRIME: u64 = (1 << 61) - 1;

pub fn mul_mod(a: u64, b: u64) -> u64 {
    let t = a as u128 * b as u128;
    let lo = (t as u64) & PRIME;
    let hi = (t >> 61) as u64;
    let s = lo + hi;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

pub fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64) -> u64 {
    assert!(a != 0, "zero has no inverse");
    pow_mod(a, PRIME - 2)
}

fn bigint_mod(n: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = ((n % &p) + &p) % &p;
    r.to_u64().expect("residue fits in u64")
}

/// Image of `q` in `F_p`; `None` when `p` divides the denominator.
pub fn rational_mod(q: &Rational) -> Option<u64> {
    let den = bigint_mod(&q.denom());
    if den == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(&q.numer()), inv_mod(den)))
}

/// Semi-echelon rows with unit pivots, stored densely from the pivot on.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    dim: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<Vec<u64>>,
}

impl ModEchelon {
    pub fn new(dim: usize) -> Self {
        ModEchelon { dim, pivot_row: vec![None; dim], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Adds `v` (sparse, entries already reduced mod p). Returns true if the
    /// rank grew.
    pub fn insert(&mut self, v: &[(usize, u64)]) -> bool {
        if self.is_full() {
            return false;
        }
        let Some(start) = v.iter().filter(|(_, a)| *a != 0).map(|(i, _)| *i).min() else {
            return false;
        };
        let mut ws = vec![0u64; self.dim];
        for &(i, a) in v {
            ws[i] = add_mod(ws[i], a);
        }
        for col in start..self.dim {
            let f = ws[col];
            if f == 0 {
                continue;
            }
            match self.pivot_row[col] {
                Some(r) => {
                    let row = &self.rows[r];
                    for (w, &a) in ws[col..].iter_mut().zip(row) {
                        if a != 0 {
                            *w = sub_mod(*w, mul_mod(f, a));
                        }
                    }
                }
                None => {
                    let inv = inv_mod(f);
                    let row: Vec<u64> = ws[col..].iter().map(|&a| mul_mod(a, inv)).collect();
                    self.pivot_row[col] = Some(self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
        false
    }
}
