//! Exact scalars.
//!
//! [`ExactInt`] is an unbounded signed integer and [`Rational`] a normalized
//! quotient of two of them: the gcd of numerator and denominator is 1 and the
//! denominator is positive, so equality is structural. The textual form is
//! `p/q`, with `/q` omitted when `q = 1` and the sign carried by `p`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `num / den`, normalized. Fails on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub(crate) fn ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den).expect("nonzero literal denominator")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let mut acc = BigRational::one();
        let mut base = self.0.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(Rational(acc))
    }

    /// Non-negative power; never fails.
    pub fn powu(&self, e: u32) -> Self {
        self.pow(i64::from(e)).expect("non-negative exponent")
    }

    /// Re-normalizes; a no-op on any value built through this API.
    pub fn normalize(&self) -> Self {
        Rational(BigRational::new(self.numer().clone(), self.denom().clone()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The integer value, when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), Some(q.trim())),
            None => (t, None),
        };
        let num: BigInt = num.parse().map_err(|_| parse_err("bad numerator"))?;
        let den: BigInt = match den {
            Some(q) => q.parse().map_err(|_| parse_err("bad denominator"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(parse_err("zero denominator"));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign(&mut self, rhs: &Rational) {
                self.0.$assign(&rhs.0);
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign(&mut self, rhs: Rational) {
                self.0.$assign(rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `0! ..= n!`.
pub fn factorials(n: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BigInt::one());
    for k in 1..=n {
        let next = out[k as usize - 1].clone() * k;
        out.push(next);
    }
    out
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rows `0..=n` of Pascal's triangle.
pub fn binomial_rows(n: u32) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n as usize + 1);
    for r in 0..=n as usize {
        let mut row = vec![BigInt::one(); r + 1];
        for k in 1..r {
            row[k] = &rows[r - 1][k - 1] + &rows[r - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// Generalized binomial `N (N-1) ... (N-k+1) / k!` for rational `N`.
pub fn generalized_binomial(top: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= top - Rational::from(i64::from(i));
        acc = Rational(acc.0 / BigRational::from_integer(BigInt::from(i + 1)));
    }
    acc
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn small_arithmetic() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("1/2") - q("1/3"), q("1/6"));
        assert_eq!(q("2/3") * q("3/4"), q("1/2"));
        assert_eq!(q("1/2").checked_div(&q("1/4")).unwrap(), q("2"));
    }

    #[test]
    fn normalization_and_sign() {
        let half = Rational::new(2, 4).unwrap();
        assert_eq!(half.to_string(), "1/2");
        let r = Rational::new(-3, -6).unwrap();
        assert_eq!(r.to_string(), "1/2");
        assert!(r.denom() > &BigInt::zero());
        let neg = Rational::new(3, -6).unwrap();
        assert_eq!(neg.to_string(), "-1/2");
        assert_eq!(Rational::from(7).to_string(), "7");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            q("1").checked_div(&Rational::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(Rational::new(1, 0), Err(Error::DivisionByZero));
        assert_eq!(Rational::zero().pow(-1), Err(Error::DivisionByZero));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(q("2/3").pow(2).unwrap(), q("4/9"));
        assert_eq!(q("-5/7").pow(0).unwrap(), Rational::one());
        assert_eq!(Rational::zero().pow(0).unwrap(), Rational::one());
        assert_eq!(q("1/2").pow(-3).unwrap(), q("8"));
        assert_eq!(q("-2").pow(3).unwrap(), q("-8"));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "x", "1/", "/2", "1.5", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
        assert_eq!(q(" -3 / 4 "), q("-3/4"));
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        let f = factorials(512);
        assert_eq!(f[512], factorial(512));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        let rows = binomial_rows(40);
        for k in 0..=40 {
            assert_eq!(rows[40][k], binomial(40, k as u32));
        }
        assert_eq!(binomial(512, 256), &f[512] / (&f[256] * &f[256]));
        assert_eq!(generalized_binomial(&q("1/2"), 2), q("-1/8"));
        assert_eq!(generalized_binomial(&q("3"), 2), q("3"));
        assert_eq!(generalized_binomial(&q("3"), 4), Rational::zero());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(p, q)| Rational::new(p, q).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a - &a, Rational::zero());
            if !b.is_zero() {
                prop_assert_eq!(a.checked_div(&b).unwrap() * &b, a.clone());
            }
        }

        #[test]
        fn normalize_is_idempotent(p in -10_000i64..10_000, q in 1i64..10_000) {
            let x = Rational::new(p, q).unwrap();
            prop_assert_eq!(x.normalize(), x.normalize().normalize());
            prop_assert_eq!(x.normalize(), x);
        }

        #[test]
        fn text_round_trip(a in arb_rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
