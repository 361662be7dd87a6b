//! Numbers of the form `a + b·ε` for an infinitesimal `ε > 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::Serialize;

use super::Rational;

/// `constant + slope·ε`, ordered lexicographically.
///
/// Comparing two values in this order is the same as comparing them for
/// every sufficiently small positive `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct EpsNumber {
    pub constant: Rational,
    pub slope: Rational,
}

impl EpsNumber {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        EpsNumber { constant, slope }
    }

    pub fn constant(c: Rational) -> Self {
        EpsNumber { constant: c, slope: Rational::zero() }
    }

    pub fn zero() -> Self {
        EpsNumber::default()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }

    /// Sign in the infinitesimal order: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.constant.signum() {
            0 => self.slope.signum(),
            s => s,
        }
    }

    pub fn scale(&self, k: &Rational) -> EpsNumber {
        EpsNumber { constant: &self.constant * k, slope: &self.slope * k }
    }
}

impl Add for &EpsNumber {
    type Output = EpsNumber;
    fn add(self, rhs: &EpsNumber) -> EpsNumber {
        EpsNumber { constant: &self.constant + &rhs.constant, slope: &self.slope + &rhs.slope }
    }
}

impl Add for EpsNumber {
    type Output = EpsNumber;
    fn add(self, rhs: EpsNumber) -> EpsNumber {
        &self + &rhs
    }
}

impl Sub for &EpsNumber {
    type Output = EpsNumber;
    fn sub(self, rhs: &EpsNumber) -> EpsNumber {
        EpsNumber { constant: &self.constant - &rhs.constant, slope: &self.slope - &rhs.slope }
    }
}

impl Sub for EpsNumber {
    type Output = EpsNumber;
    fn sub(self, rhs: EpsNumber) -> EpsNumber {
        &self - &rhs
    }
}

impl Neg for &EpsNumber {
    type Output = EpsNumber;
    fn neg(self) -> EpsNumber {
        EpsNumber { constant: -&self.constant, slope: -&self.slope }
    }
}

impl Mul<&Rational> for &EpsNumber {
    type Output = EpsNumber;
    fn mul(self, rhs: &Rational) -> EpsNumber {
        self.scale(rhs)
    }
}

impl fmt::Display for EpsNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            write!(f, "{}", self.constant)
        } else if self.slope.is_negative() {
            write!(f, "{} - {}ε", self.constant, -&self.slope)
        } else {
            write!(f, "{} + {}ε", self.constant, self.slope)
        }
    }
}

/// Builds the vector `base + ε·direction`, scaled by `sign` on the slope.
pub fn perturbed(base: &[Rational], direction: &[Rational], sign: i32) -> Vec<EpsNumber> {
    assert_eq!(base.len(), direction.len());
    base.iter()
        .zip(direction)
        .map(|(b, d)| {
            let slope = if sign < 0 { -d } else { d.clone() };
            EpsNumber::new(b.clone(), slope)
        })
        .collect()
}

/// Dot product of a rational covector with an ε-vector.
pub fn dot_eps(covector: &[Rational], v: &[EpsNumber]) -> EpsNumber {
    assert_eq!(covector.len(), v.len());
    let mut c = Rational::zero();
    let mut s = Rational::zero();
    for (a, x) in covector.iter().zip(v) {
        if a.is_zero() {
            continue;
        }
        c += a * &x.constant;
        s += a * &x.slope;
    }
    EpsNumber::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(a: i64, b: i64) -> EpsNumber {
        EpsNumber::new(Rational::integer(a), Rational::integer(b))
    }

    #[test]
    fn lexicographic() {
        assert!(e(0, 1) > e(0, 0));
        assert!(e(0, 100) < e(1, -100));
        assert_eq!(e(0, -1).signum(), -1);
        assert_eq!(e(2, -1).signum(), 1);
        assert_eq!(e(2, -1).to_string(), "2 - 1ε");
    }

    proptest! {
        #[test]
        fn total_order_matches_definition(a in -5i64..5, b in -5i64..5, c in -5i64..5, d in -5i64..5) {
            let x = e(a, b);
            let y = e(c, d);
            let expected_lt = a < c || (a == c && b < d);
            prop_assert_eq!(x < y, expected_lt);
            prop_assert_eq!(x == y, a == c && b == d);
            // Agreement with evaluation at a concrete tiny ε (|slopes| ≤ 10, gaps ≥ 1).
            let eps = Rational::new(1, 1000);
            let xv = Rational::integer(a) + Rational::integer(b) * &eps;
            let yv = Rational::integer(c) + Rational::integer(d) * &eps;
            prop_assert_eq!(x.cmp(&y), xv.cmp(&yv));
        }
    }
}
