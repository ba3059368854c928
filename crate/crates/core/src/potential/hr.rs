use serde::{Deserialize, Serialize};

use super::{u_coeffs_checked, CalabiParams};
use crate::bell::BellTable;
use crate::error::{invalid, Result};
use crate::exact::{factorial, Rational};

/// Block scale `h_r(u, m) = (1/r!) sum_{j=1}^r m^j B_{r,j}(a_1, ..., a_r)`.
///
/// With `m = 1` this is `Y_r(a) / r!`, so `h_1 = u'(0)` and
/// `h_2 = (u'(0)^2 + u''(0)) / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrValue {
    pub r: usize,
    pub m: Rational,
    pub value: Rational,
}

/// `h_1..=h_{r_max}` from one coefficient sequence and one Bell table.
pub fn h_values(params: &CalabiParams, m: &Rational, r_max: usize) -> Result<Vec<HrValue>> {
    if r_max < 1 {
        return Err(invalid("h_r needs r >= 1"));
    }
    if !m.is_positive() {
        return Err(invalid(format!("m must be positive, got {m}")));
    }
    let a = u_coeffs_checked(params, r_max)?;
    let mut table = BellTable::new();
    let mut out = Vec::with_capacity(r_max);
    for (r, ar) in (1..=r_max).zip(a.values) {
        table.push(ar);
        let sum = table.weighted_row_sum(r, m);
        let value = sum.checked_div(&Rational::from(factorial(r as u32)))?;
        out.push(HrValue {
            r,
            m: m.clone(),
            value,
        });
    }
    Ok(out)
}

pub fn h_r(params: &CalabiParams, m: &Rational, r: usize) -> Result<HrValue> {
    Ok(h_values(params, m, r)?.pop().expect("r >= 1 rows"))
}
