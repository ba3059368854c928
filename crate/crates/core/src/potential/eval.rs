use std::f64::consts::PI;

use num_complex::Complex64;

use super::{CalabiParams, CoefficientSequence};
use crate::error::{invalid, Error, Result};
use crate::exact::{factorial, Rational};

/// Largest tolerated `|Im u(x)|` after summing the conjugate log pairs.
pub const IMAG_RESIDUE_LIMIT: f64 = 1e-10;

/// Relative step for the central differences.
const FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub imag_residue: f64,
}

/// Double-precision evaluation of
///
/// ```text
/// u(x) = (n/k0) (w - 1) - sum_{j=1}^{n-1} ((1 - t_j)/k0) log((w - t_j)/(1 - t_j))
/// w    = (1 + n k0 c x)^(1/n),   t_j = exp(2 pi i j / n)
/// ```
///
/// with principal-branch logarithms. The inner scale `n k0 c` is what makes
/// `u'(0) = c` and the ODE right-hand side equal to `c`; the real part is
/// returned and the imaginary part is checked against [`IMAG_RESIDUE_LIMIT`].
#[derive(Clone, Debug)]
pub struct ClosedFormEvaluator {
    params: CalabiParams,
    n: f64,
    k0: f64,
    c: f64,
    inner_scale: f64,
    roots: Vec<Complex64>,
}

impl ClosedFormEvaluator {
    pub fn new(params: &CalabiParams) -> Self {
        let n = f64::from(params.n());
        let k0 = params.k0().to_f64();
        let c = params.c().to_f64();
        let roots = (1..params.n())
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * f64::from(j) / n))
            .collect();
        ClosedFormEvaluator {
            params: params.clone(),
            n,
            k0,
            c,
            inner_scale: n * k0 * c,
            roots,
        }
    }

    pub fn params(&self) -> &CalabiParams {
        &self.params
    }

    /// `exp(2 pi i j / n)` for `j = 1..n-1`; `j = 0` is not part of the sum.
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    fn base(&self, x: f64) -> Result<f64> {
        let b = 1.0 + self.inner_scale * x;
        if !x.is_finite() || b <= 0.0 {
            return Err(invalid(format!("x = {x} is outside the domain of u")));
        }
        Ok(b)
    }

    fn checked(&self, x: f64, z: Complex64) -> Result<Evaluation> {
        let residue = z.im.abs();
        if residue >= IMAG_RESIDUE_LIMIT {
            return Err(Error::BranchDiagnostic { x, residue });
        }
        Ok(Evaluation {
            value: z.re,
            imag_residue: residue,
        })
    }

    /// `u(x)` with its imaginary residue. Accepts any `x` with `1 + n k0 c x > 0`.
    pub fn evaluate(&self, x: f64) -> Result<Evaluation> {
        let w = Complex64::from(self.base(x)?.powf(1.0 / self.n));
        let one = Complex64::from(1.0);
        let mut z = (w - one) * (self.n / self.k0);
        for &t in &self.roots {
            z -= (one - t) / self.k0 * ((w - t) / (one - t)).ln();
        }
        self.checked(x, z)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.evaluate(x)?.value)
    }

    /// `u'(x)` by differentiating the closed form.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let b = self.base(x)?;
        let w = b.powf(1.0 / self.n);
        let dw = self.inner_scale / self.n * w / b;
        let wc = Complex64::from(w);
        let one = Complex64::from(1.0);
        let mut z = Complex64::from(self.n / self.k0);
        for &t in &self.roots {
            z -= (one - t) / self.k0 / (wc - t);
        }
        Ok(self.checked(x, z * dw)?.value)
    }

    fn step(x: f64) -> f64 {
        FD_STEP * (1.0 + x.abs())
    }

    /// `u'(x)` by a central difference of `u`.
    pub fn derivative_fd(&self, x: f64) -> Result<f64> {
        let h = Self::step(x);
        Ok((self.value(x + h)? - self.value(x - h)?) / (2.0 * h))
    }

    /// `u''(x)` by a central difference of the analytic `u'`.
    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        let h = Self::step(x);
        Ok((self.derivative(x + h)? - self.derivative(x - h)?) / (2.0 * h))
    }

    /// `(1 + k0 x u'(x), u'(x) + x u''(x))`; both must be positive.
    pub fn condition_i(&self, x: f64) -> Result<(f64, f64)> {
        let d1 = self.derivative(x)?;
        let d2 = self.second_derivative(x)?;
        Ok((1.0 + self.k0 * x * d1, d1 + x * d2))
    }

    /// `|(1 + k0 x u')^(n-1) (u' + x u'') - c| / c`.
    pub fn condition_ii_residual(&self, x: f64) -> Result<f64> {
        let (first, second) = self.condition_i(x)?;
        let lhs = first.powi(self.params.n() as i32 - 1) * second;
        Ok((lhs - self.c).abs() / self.c)
    }
}

/// `sum_{k=1}^{R} a_k x^k / k!` in double precision.
pub fn taylor_polynomial(coeffs: &CoefficientSequence, x: f64) -> f64 {
    let terms: Vec<f64> = coeffs
        .values
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let k = i as u32 + 1;
            let t = a
                .checked_div(&Rational::from(factorial(k)))
                .expect("k! > 0");
            t.to_f64()
        })
        .collect();
    // Horner on x (t_1 + x (t_2 + ...))
    terms.iter().rev().fold(0.0, |acc, t| acc * x + t) * x
}
