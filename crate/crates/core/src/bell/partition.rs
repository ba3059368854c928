use num_bigint::BigInt;

use super::{check_indices, BellAlgorithm, InputSequence};
use crate::error::Result;
use crate::exact::{factorials, Rational};
use crate::registry::Named;

/// Direct sum over the multiplicity vectors `(s_1, ..., s_{r-j+1})`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PartitionSum;

impl Named for PartitionSum {
    fn name(&self) -> &'static str {
        "partition"
    }
}

impl BellAlgorithm for PartitionSum {
    fn partial(&self, r: usize, j: usize, x: &InputSequence) -> Result<Rational> {
        check_indices(r, j, x)?;
        let width = r - j + 1;
        let fact = factorials(r as u32);
        // x_i / i!
        let scaled: Vec<Rational> = (1..=width)
            .map(|i| {
                Rational::new(x.get(i).numer().clone(), x.get(i).denom() * &fact[i])
                    .expect("positive denominator")
            })
            .collect();

        let mut total = Rational::zero();
        let mut mult = vec![0usize; width];
        visit(width, r, j, &mut mult, &mut |s| {
            let mut denom = BigInt::from(1);
            let mut term = Rational::one();
            for (i, &si) in s.iter().enumerate() {
                if si > 0 {
                    denom *= &fact[si];
                    term *= scaled[i].powu(si as u32);
                }
            }
            let coeff = Rational::new(fact[r].clone(), denom).expect("nonzero factorial");
            total += coeff * term;
        });
        Ok(total)
    }
}

/// Calls `f` on every `s` with `sum (i+1) s_i = weight` and `sum s_i = count`,
/// filling part sizes from the largest down.
fn visit(top: usize, weight: usize, count: usize, s: &mut [usize], f: &mut impl FnMut(&[usize])) {
    if count == 0 {
        if weight == 0 {
            f(s);
        }
        return;
    }
    if top == 0 || weight < count || weight > top * count {
        return;
    }
    let max_k = (weight / top).min(count);
    for k in (0..=max_k).rev() {
        s[top - 1] = k;
        visit(top - 1, weight - k * top, count - k, s, f);
    }
    s[top - 1] = 0;
}
