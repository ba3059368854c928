//! Truncated formal power series over [`Rational`].
//!
//! A series of order `R` stores `c_0..=c_R` and is exact through `x^R`.
//! Binary operations truncate to the smaller order of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{invalid, Result};
use crate::exact::{factorials, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("a series needs at least a constant term"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::constant(Rational::one(), order)
    }

    /// The formal variable `x`.
    pub fn variable(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// `sum_{k>=1} a_k x^k / k!` from `a = [a_1, a_2, ...]`, at order `a.len()`.
    pub fn from_derivatives(a: &[Rational]) -> Self {
        let fact = factorials(a.len() as u32);
        let mut coeffs = Vec::with_capacity(a.len() + 1);
        coeffs.push(Rational::zero());
        for (k, ak) in a.iter().enumerate() {
            let f = Rational::from(fact[k + 1].clone());
            coeffs.push(ak.checked_div(&f).expect("factorial is nonzero"));
        }
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// `k! * c_k`, the k-th derivative at zero.
    pub fn derivative_at_zero(&self, k: usize) -> Rational {
        self.coeffs[k].clone() * Rational::from(crate::exact::factorial(k as u32))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &TruncatedSeries) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + k] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn pow_int(&self, e: u32) -> Self {
        let mut acc = TruncatedSeries::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Termwise derivative; the order drops by one.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(invalid("cannot differentiate an order-0 series"));
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| c * Rational::from(k as i64 + 1))
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// `x * self`, keeping the order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Rational::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        TruncatedSeries { coeffs }
    }

    /// `exp(self)` for a series without constant term, from `E' = a' E`:
    /// `k E_k = sum_{i=1..k} i a_i E_{k-i}`.
    pub fn exp_of(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(invalid("exp_of needs a zero constant term"));
        }
        let order = self.order();
        let mut e = Vec::with_capacity(order + 1);
        e.push(Rational::one());
        for k in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &e[k - i] * Rational::from(i as i64);
                }
            }
            e.push(acc.checked_div(&Rational::from(k as i64))?);
        }
        Ok(TruncatedSeries { coeffs: e })
    }

    fn zip_with(
        &self,
        other: &TruncatedSeries,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| f(&self.coeffs[k], &other.coeffs[k]))
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }
}
