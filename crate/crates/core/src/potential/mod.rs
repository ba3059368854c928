//! The Calabi potential `u` on `[0, inf)`.
//!
//! `u` is pinned down by `u(0) = 0` and the ODE
//!
//! ```text
//! (1 + k0 x u'(x))^(n-1) (u'(x) + x u''(x)) = c
//! ```
//!
//! Its derivatives at zero `a_j = u^(j)(0)` come from two interchangeable
//! [`CoefficientMethod`]s: the explicit product formula ([`ProductFormula`])
//! and forward substitution in the ODE ([`OdeSubstitution`]). The ODE method
//! is authoritative when they disagree.

mod closed;
mod eval;
mod hr;
mod ode;

pub use closed::ProductFormula;
pub use eval::{taylor_polynomial, ClosedFormEvaluator, Evaluation, IMAG_RESIDUE_LIMIT};
pub use hr::{h_r, h_values, HrValue};
pub use ode::OdeSubstitution;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::Rational;
use crate::registry::{Named, Registry};

/// `(n, k0, c)`: total complex dimension, Einstein constant of the base, and
/// the right-hand side of the ODE (equivalently `u'(0)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalabiParams {
    n: u32,
    k0: Rational,
    c: Rational,
}

impl CalabiParams {
    pub fn new(n: u32, k0: Rational, c: Rational) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("n must be at least 2, got {n}")));
        }
        if !k0.is_positive() {
            return Err(invalid(format!("k0 must be positive, got {k0}")));
        }
        if !c.is_positive() {
            return Err(invalid(format!("c must be positive, got {c}")));
        }
        Ok(CalabiParams { n, k0, c })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k0(&self) -> &Rational {
        &self.k0
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }
}

/// `(a_1, ..., a_R)` with `a_j = u^(j)(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientSequence {
    pub params: CalabiParams,
    pub values: Vec<Rational>,
    pub method: String,
}

impl CoefficientSequence {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `a_j`, 1-based.
    pub fn get(&self, j: usize) -> &Rational {
        &self.values[j - 1]
    }
}

pub trait CoefficientMethod: Named + Send + Sync {
    /// `a_1..=a_order`; `order >= 1` is checked by the caller.
    fn derivatives(&self, params: &CalabiParams, order: usize) -> Vec<Rational>;

    fn coefficients(&self, params: &CalabiParams, order: usize) -> Result<CoefficientSequence> {
        if order < 1 {
            return Err(invalid("coefficient order must be at least 1"));
        }
        Ok(CoefficientSequence {
            params: params.clone(),
            values: self.derivatives(params, order),
            method: self.name().to_string(),
        })
    }
}

pub type MethodRegistry = Registry<dyn CoefficientMethod>;

/// `closed-form` and `ode`.
pub fn method_registry() -> MethodRegistry {
    let mut reg = Registry::new("coefficient method");
    reg.register(Box::new(ProductFormula) as Box<dyn CoefficientMethod>);
    reg.register(Box::new(OdeSubstitution));
    reg
}

pub fn u_coeffs_closed(params: &CalabiParams, order: usize) -> Result<CoefficientSequence> {
    ProductFormula.coefficients(params, order)
}

pub fn u_coeffs_ode(params: &CalabiParams, order: usize) -> Result<CoefficientSequence> {
    OdeSubstitution.coefficients(params, order)
}

/// Runs both methods and returns the ODE sequence, or the first index where
/// they differ.
pub fn u_coeffs_checked(params: &CalabiParams, order: usize) -> Result<CoefficientSequence> {
    let ode = u_coeffs_ode(params, order)?;
    let closed = u_coeffs_closed(params, order)?;
    compare(&ode, &closed)?;
    Ok(ode)
}

pub fn compare(left: &CoefficientSequence, right: &CoefficientSequence) -> Result<()> {
    for (i, (l, r)) in left.values.iter().zip(&right.values).enumerate() {
        if l != r {
            return Err(Error::MethodDisagreement {
                index: i + 1,
                left: l.to_string(),
                right: r.to_string(),
            });
        }
    }
    Ok(())
}
