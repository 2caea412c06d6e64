//! Exact rational scalars.
//!
//! `Scalar` is an arbitrary-precision rational number kept in lowest terms
//! with a positive denominator.  Values whose numerator and denominator fit
//! in a machine word are stored inline and use `i128` intermediates; anything
//! larger is promoted to a heap-allocated big rational and demoted again as
//! soon as it shrinks back into range, so every value has a unique
//! representation and derived equality is sound.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced fraction with positive denominator, both in `i64` range.
    Small(i64, i64),
    /// Reduced fraction with at least one component outside `i64` range.
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    /// Builds `numer/denom`; panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_i128_ratio(numer as i128, denom as i128)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Small(n, 1))
    }

    /// Reduces `n/d` (d != 0) and picks the inline or heap representation.
    fn from_i128_ratio(mut n: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Scalar::zero();
        }
        let g = gcd_i128(n, d);
        n /= g;
        d /= g;
        if let (Ok(sn), Ok(sd)) = (i64::try_from(n), i64::try_from(d)) {
            Scalar(Repr::Small(sn, sd))
        } else {
            Scalar(Repr::Big(Box::new(BigRational::new(n.into(), d.into()))))
        }
    }

    /// Re-inlines a big value if it fits machine words again.
    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Scalar(Repr::Small(n, d))
        } else {
            Scalar(Repr::Big(Box::new(r)))
        }
    }

    pub fn to_big_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.numer().sign() == num::bigint::Sign::Minus,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128_ratio(*d as i128, *n as i128),
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `self * (p/q)` with machine-word factors, used in hot loops.
    pub fn mul_ratio(&self, p: i64, q: i64) -> Self {
        self * &Scalar::new(p, q)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a * d).checked_add(c * b) {
                    Some(num) => Scalar::from_i128_ratio(num, b * d),
                    None => Scalar::from_big(self.to_big_rational() + rhs.to_big_rational()),
                }
            }
            _ => Scalar::from_big(self.to_big_rational() + rhs.to_big_rational()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Scalar::from_i128_ratio(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Scalar::from_big(self.to_big_rational() * rhs.to_big_rational()),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(n, d) => Scalar(Repr::Small(-n, *d)),
            Repr::Big(r) => Scalar::from_big(-(**r).clone()),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                // b, d > 0, so cross-multiplication preserves order.
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big_rational().cmp(&other.to_big_rational()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(format!("invalid rational `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        Ok(Scalar::from_big(BigRational::new(n, d)))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn construction_reduces_and_normalizes_sign() {
        assert_eq!(s(2, 4), s(1, 2));
        assert_eq!(s(1, -2), s(-1, 2));
        assert_eq!(s(0, -7), Scalar::zero());
        assert_eq!(s(-6, -4), s(3, 2));
    }

    #[test]
    fn arithmetic_matches_hand_values() {
        assert_eq!(&s(1, 2) + &s(1, 3), s(5, 6));
        assert_eq!(&s(1, 2) - &s(1, 2), Scalar::zero());
        assert_eq!(&s(2, 3) * &s(3, 4), s(1, 2));
        assert_eq!(&s(1, 2) / &s(1, 4), s(2, 1));
        assert_eq!(-&s(1, 2), s(-1, 2));
        assert_eq!(s(7, 3).recip(), s(3, 7));
    }

    #[test]
    fn overflow_promotes_to_big_and_stays_exact() {
        let big = Scalar::from_int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(
            sq.to_big_rational(),
            BigRational::from(BigInt::from(i64::MAX)) * BigRational::from(BigInt::from(i64::MAX))
        );
        // Dividing back demotes to the inline representation.
        assert_eq!(&sq / &big, big);
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(s(1, 3) < s(1, 2));
        assert!(s(-1, 2) < s(1, 1000));
        assert!(s(2, 4) == s(1, 2));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for v in [s(3, 1), s(-5, 7), Scalar::zero(), s(22, 7)] {
            let txt = v.to_string();
            assert_eq!(txt.parse::<Scalar>().unwrap(), v);
        }
        assert_eq!("4/6".parse::<Scalar>().unwrap(), s(2, 3));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn serde_round_trips_as_string() {
        let v = s(-7, 12);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"-7/12\"");
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), v);
    }

    prop_compose! {
        fn arb_scalar()(n in -500i64..500, d in 1i64..60) -> Scalar {
            Scalar::new(n, d)
        }
    }

    proptest! {
        #[test]
        fn matches_big_rational_oracle(a in arb_scalar(), b in arb_scalar()) {
            let (ra, rb) = (a.to_big_rational(), b.to_big_rational());
            prop_assert_eq!((&a + &b).to_big_rational(), &ra + &rb);
            prop_assert_eq!((&a - &b).to_big_rational(), &ra - &rb);
            prop_assert_eq!((&a * &b).to_big_rational(), &ra * &rb);
            if !b.is_zero() {
                prop_assert_eq!((&a / &b).to_big_rational(), &ra / &rb);
            }
            prop_assert_eq!(a.cmp(&b), ra.cmp(&rb));
        }

        #[test]
        fn field_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &Scalar::zero(), a.clone());
            prop_assert_eq!(&a * &Scalar::one(), a.clone());
        }

        #[test]
        fn text_round_trip(a in arb_scalar()) {
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }
    }
}
