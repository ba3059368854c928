//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use calabi_bell::potential::CalabiParams;
use calabi_bell::Rational;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with small numerator and denominator.
pub fn rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=7);
        if p != 0 {
            return Rational::new(p, d).unwrap();
        }
    }
}

pub fn positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    let p: i64 = rng.gen_range(1..=9);
    let d: i64 = rng.gen_range(1..=7);
    Rational::new(p, d).unwrap()
}

pub fn rationals(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| rational(rng)).collect()
}

/// `n in 2..=5`, `k0/2 in 1..=3`, positive rational `c`.
pub fn admissible_params(rng: &mut ChaCha8Rng) -> CalabiParams {
    let n = rng.gen_range(2..=5);
    let k0 = Rational::from(2 * rng.gen_range(1..=3i64));
    CalabiParams::new(n, k0, positive_rational(rng)).unwrap()
}

/// Stirling numbers of the second kind by `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::from(0); max + 1]; max + 1];
    s[0][0] = BigInt::from(1);
    for n in 1..=max {
        for k in 1..=n {
            s[n][k] = BigInt::from(k) * &s[n - 1][k] + &s[n - 1][k - 1];
        }
    }
    s
}

/// Bell numbers from the Bell triangle.
pub fn bell_numbers(max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(1)];
    let mut row = vec![BigInt::from(1)];
    for _ in 1..=max {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let t = next.last().unwrap() + v;
            next.push(t);
        }
        out.push(next[0].clone());
        row = next;
    }
    out
}

/// `Y_4` written out monomial by monomial.
pub fn y4_expanded(a: &[Rational]) -> Rational {
    let (a1, a2, a3, a4) = (&a[0], &a[1], &a[2], &a[3]);
    a1.powu(4) + q("6") * a2 * a1 * a1 + q("4") * a3 * a1 + q("3") * a2 * a2 + a4
}
