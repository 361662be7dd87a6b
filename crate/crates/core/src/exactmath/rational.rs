//! Arbitrary-precision rationals with an inline `i64` representation.
//!
//! Values are always kept in lowest terms with a positive denominator, and a
//! value is stored inline whenever both parts fit in an `i64` (excluding
//! `i64::MIN`). Everything else falls back to [`BigRational`]. Because the
//! representation is canonical, derived equality and hashing are exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

#[derive(Clone, Debug)]
pub struct Rational(Repr);

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    fn from_i128_parts(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        if num == 0 {
            return Rational::zero();
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if fits(n) && fits(d) {
            Rational(Repr::Small { num: n as i64, den: d as i64 })
        } else {
            Rational::from_big(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
    }

    fn from_big(v: BigRational) -> Rational {
        // BigRational::new already reduces; demote when possible.
        if let (Some(n), Some(d)) = (v.numer().to_i64(), v.denom().to_i64()) {
            if n != i64::MIN {
                return Rational(Repr::Small { num: n, den: d });
            }
        }
        Rational(Repr::Big(v))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => b.clone(),
        }
    }

    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Rational::from_i128_parts(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Rational {
        assert!(!den.is_zero(), "zero denominator");
        Rational::from_big(BigRational::new(num, den))
    }

    pub fn integer(v: i64) -> Rational {
        Rational::from_i128_parts(v as i128, 1)
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// The value as an `i64` if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(*num),
            Repr::Small { .. } => None,
            Repr::Big(b) if b.is_integer() => b.numer().to_i64(),
            Repr::Big(_) => None,
        }
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(num.div_floor(den)),
            Repr::Big(b) => b.floor().to_integer(),
        }
    }

    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(num.div_ceil(den)),
            Repr::Big(b) => b.ceil().to_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small { num, den } => Rational::from_i128_parts(*den as i128, *num as i128),
            Repr::Big(b) => Rational::from_big(b.recip()),
        }
    }

    /// Integer power; negative exponents invert. Panics for `0^negative`.
    pub fn pow(&self, exp: i32) -> Rational {
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = Rational::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::integer(v as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(v))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_ref(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
            if b == d {
                return Rational::from_i128_parts(*a as i128 + *c as i128, *b as i128);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                (Some(p), Some(q), Some(den)) => match p.checked_add(q) {
                    Some(num) => Rational::from_i128_parts(num, den),
                    None => Rational::from_big(x.to_big() + y.to_big()),
                },
                _ => Rational::from_big(x.to_big() + y.to_big()),
            }
        }
        _ => Rational::from_big(x.to_big() + y.to_big()),
    }
}

fn mul_ref(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
            // Products of two i64 always fit in i128.
            Rational::from_i128_parts(*a as i128 * *c as i128, *b as i128 * *d as i128)
        }
        _ => Rational::from_big(x.to_big() * y.to_big()),
    }
}

fn neg_ref(x: &Rational) -> Rational {
    match &x.0 {
        Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
        Repr::Big(b) => Rational::from_big(-b),
    }
}

fn sub_ref(x: &Rational, y: &Rational) -> Rational {
    add_ref(x, &neg_ref(y))
}

fn div_ref(x: &Rational, y: &Rational) -> Rational {
    mul_ref(x, &y.recip())
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $imp:expr) => {
        impl<'a> $Trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $imp(self, rhs)
            }
        }
        impl $Trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(&self, &rhs)
            }
        }
        impl<'a> $Trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $imp(&self, rhs)
            }
        }
        impl<'a> $Trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

macro_rules! forward_assign {
    ($Trait:ident, $method:ident, $op:tt) => {
        impl $Trait<Rational> for Rational {
            fn $method(&mut self, rhs: Rational) {
                *self = &*self $op &rhs;
            }
        }
        impl<'a> $Trait<&'a Rational> for Rational {
            fn $method(&mut self, rhs: &'a Rational) {
                *self = &*self $op rhs;
            }
        }
    };
}

forward_assign!(AddAssign, add_assign, +);
forward_assign!(SubAssign, sub_assign, -);
forward_assign!(MulAssign, mul_assign, *);
forward_assign!(DivAssign, div_assign, /);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg_ref(&self)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg_ref(self)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::from_bigints(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    /// Accepts either a JSON integer or a `"p/q"` string.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Lit {
            Int(i64),
            Str(String),
        }
        match Lit::deserialize(deserializer)? {
            Lit::Int(v) => Ok(Rational::integer(v)),
            Lit::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(q(4, -6), q(-2, 3));
        assert_eq!(q(4, -6).to_string(), "-2/3");
        assert_eq!(q(0, -5), Rational::zero());
        assert_eq!(q(6, 3).to_i64(), Some(2));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::integer(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.numer(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        let m = Rational::from(BigInt::from(i64::MIN));
        assert!(matches!(m.0, Repr::Big(_)));
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(q(-3, 2).floor(), BigInt::from(-2));
        assert_eq!(q(-3, 2).ceil(), BigInt::from(-1));
        assert_eq!(q(4, 2).floor(), BigInt::from(2));
        assert_eq!(q(4, 2).ceil(), BigInt::from(2));
    }

    #[test]
    fn parse_and_serde() {
        assert_eq!("7/-14".parse::<Rational>().unwrap(), q(-1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        let v: Vec<Rational> = serde_json::from_str(r#"[3, "1/2"]"#).unwrap();
        assert_eq!(v, vec![q(3, 1), q(1, 2)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["3","1/2"]"#);
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in -1000i64..1000, b in 1i64..50, c in any::<i64>(), d in 1i64..i64::MAX) {
            let x = q(a, b);
            let y = q(c, d);
            let bx = BigRational::new(a.into(), b.into());
            let by = BigRational::new(c.into(), d.into());
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            if c != 0 {
                prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
        }
    }
}
