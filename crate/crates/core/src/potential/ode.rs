use super::{CalabiParams, CoefficientMethod};
use crate::exact::{factorials, Rational};
use crate::registry::Named;

/// Forward substitution in `(1 + k0 x v)^(n-1) (v + x v') = c` with `v = u'`.
///
/// Writing `F = 1 + k0 x v`, `G = F^(n-1)` and `Q = v + x v'`, the `x^r`
/// coefficient of `G Q` is `(r + 1) v_r + sum_{i>=1} G_i Q_{r-i}`, and `G_i`
/// only involves `v_0..v_{i-1}`. Each step therefore solves for `v_r` with a
/// division by `r + 1`. `G` is grown with the power recurrence
/// `k G_k = sum_{i=1}^k ((m + 1) i - k) F_i G_{k-i}` for `G = F^m`, `F_0 = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct OdeSubstitution;

impl Named for OdeSubstitution {
    fn name(&self) -> &'static str {
        "ode"
    }
}

impl CoefficientMethod for OdeSubstitution {
    fn derivatives(&self, params: &CalabiParams, order: usize) -> Vec<Rational> {
        let m = i64::from(params.n()) - 1;
        let k0 = params.k0();

        // v_0..v_{order-1}
        let mut v: Vec<Rational> = Vec::with_capacity(order);
        // F_0.. with F_0 = 1, F_i = k0 v_{i-1}
        let mut f: Vec<Rational> = vec![Rational::one()];
        let mut g: Vec<Rational> = vec![Rational::one()];
        // Q_k = (k + 1) v_k
        let mut qs: Vec<Rational> = Vec::with_capacity(order);

        for r in 0..order {
            if r >= 1 {
                f.push(k0 * &v[r - 1]);
                let k = r as i64;
                let mut acc = Rational::zero();
                for i in 1..=r {
                    let w = (m + 1) * i as i64 - k;
                    if w != 0 && !f[i].is_zero() {
                        acc += &f[i] * &g[r - i] * Rational::from(w);
                    }
                }
                g.push(acc * Rational::ratio(1, k));
            }

            let mut rhs = if r == 0 {
                params.c().clone()
            } else {
                Rational::zero()
            };
            for i in 1..=r {
                rhs -= &g[i] * &qs[r - i];
            }
            let vr = rhs * Rational::ratio(1, r as i64 + 1);
            qs.push(&vr * Rational::from(r as i64 + 1));
            v.push(vr);
        }

        // a_j = (j-1)! v_{j-1}
        let fact = factorials(order as u32);
        v.into_iter()
            .enumerate()
            .map(|(k, vk)| vk * Rational::from(fact[k].clone()))
            .collect()
    }
}
