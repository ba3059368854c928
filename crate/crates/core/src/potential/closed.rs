use super::{CalabiParams, CoefficientMethod};
use crate::exact::Rational;
use crate::registry::Named;

/// `a_1 = c`, `a_j = ((-1)^(j+1) / j) c^j k0^(j-1) prod_{s=1}^{j-1} (n s - 1)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ProductFormula;

impl Named for ProductFormula {
    fn name(&self) -> &'static str {
        "closed-form"
    }
}

impl CoefficientMethod for ProductFormula {
    fn derivatives(&self, params: &CalabiParams, order: usize) -> Vec<Rational> {
        let n = i64::from(params.n());
        let mut out = Vec::with_capacity(order);
        // c^j k0^(j-1) prod_{s<j} (n s - 1), carried forward
        let mut running = params.c().clone();
        for j in 1..=order {
            if j > 1 {
                let s = j as i64 - 1;
                running = running * params.c() * params.k0() * Rational::from(n * s - 1);
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            out.push(&running * Rational::ratio(sign, j as i64));
        }
        out
    }
}
