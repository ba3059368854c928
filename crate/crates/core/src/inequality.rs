//! Sign scan of the alternating Bell sum
//!
//! ```text
//! S(n, q, r) = (-1)^r sum_{j=1}^r (-q)^j B_{r,j}(x_1, x_2, ...),
//! x_l = (1/l) prod_{s=1}^{l-1} (n s - 1)
//! ```
//!
//! For every `n >= 2` and rational `q > 0` some `r` makes `S` negative; the
//! scanner looks for the least such `r` up to a cap. Not finding one below the
//! cap is an ordinary report state.

use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bell::BellTable;
use crate::error::{invalid, Result};
use crate::exact::Rational;

pub const DEFAULT_R_MAX: usize = 200;

/// `x_1, x_2, ...` for a fixed `n`; `x_1 = 1`, `x_2 = (n-1)/2`,
/// `x_3 = (n-1)(2n-1)/3`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedSequence {
    n: u32,
    values: Vec<Rational>,
    // prod_{s=1}^{len-1} (n s - 1)
    product: BigInt,
}

impl NormalizedSequence {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("n must be at least 2, got {n}")));
        }
        Ok(NormalizedSequence {
            n,
            values: Vec::new(),
            product: BigInt::from(1),
        })
    }

    /// Appends and returns `x_{len+1}`.
    pub fn next_value(&mut self) -> Rational {
        let l = self.values.len() + 1;
        if l > 1 {
            self.product *= BigInt::from(u64::from(self.n) * (l as u64 - 1) - 1);
        }
        let x = Rational::new(self.product.clone(), BigInt::from(l)).expect("l >= 1");
        self.values.push(x.clone());
        x
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

pub fn normalized_sequence(n: u32, length: usize) -> Result<NormalizedSequence> {
    if length < 1 {
        return Err(invalid("length must be at least 1"));
    }
    let mut seq = NormalizedSequence::new(n)?;
    for _ in 0..length {
        seq.next_value();
    }
    Ok(seq)
}

fn check_q(q: &Rational) -> Result<()> {
    if !q.is_positive() {
        return Err(invalid(format!("q must be positive, got {q}")));
    }
    Ok(())
}

fn signed_sum(table: &BellTable, r: usize, q: &Rational) -> Rational {
    let s = table.weighted_row_sum(r, &-q);
    if r.is_multiple_of(2) {
        s
    } else {
        -s
    }
}

/// `S(n, q, r)`.
pub fn s_value(n: u32, q: &Rational, r: usize) -> Result<Rational> {
    check_q(q)?;
    if r < 1 {
        return Err(invalid("r must be at least 1"));
    }
    let seq = normalized_sequence(n, r)?;
    let mut table = BellTable::new();
    table.extend_from(seq.values.iter().cloned());
    Ok(signed_sum(&table, r, q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub r: usize,
    #[serde(rename = "S")]
    pub s: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: u32,
    pub q: Rational,
    pub rows: Vec<ScanRow>,
    pub min_negative_r: Option<usize>,
    pub r_max: usize,
}

impl ScanReport {
    /// Least `r` with a negative row, read off the rows alone.
    pub fn min_negative_from_rows(&self) -> Option<usize> {
        self.rows
            .iter()
            .find(|row| row.s.is_negative())
            .map(|row| row.r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// `r,S` with a header row.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        if self.rows.is_empty() {
            w.write_record(["r", "S"])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Scans `r = 1..=r_max`, growing one Bell table, and stops at the first
/// negative `S`.
pub fn min_negative_r(n: u32, q: &Rational, r_max: usize) -> Result<ScanReport> {
    check_q(q)?;
    if r_max < 1 {
        return Err(invalid("r_max must be at least 1"));
    }
    let mut seq = NormalizedSequence::new(n)?;
    let mut table = BellTable::new();
    let mut rows = Vec::new();
    let mut found = None;
    for r in 1..=r_max {
        table.push(seq.next_value());
        let s = signed_sum(&table, r, q);
        let negative = s.is_negative();
        rows.push(ScanRow { r, s });
        if negative {
            found = Some(r);
            break;
        }
    }
    Ok(ScanReport {
        n,
        q: q.clone(),
        rows,
        min_negative_r: found,
        r_max,
    })
}

/// Independent scans for each `q`, run in parallel; reports keep input order.
pub fn scan_grid(n: u32, qs: &[Rational], r_max: usize) -> Result<Vec<ScanReport>> {
    qs.par_iter().map(|q| min_negative_r(n, q, r_max)).collect()
}

/// `q = m / k0` with `m` and `k0 / 2` positive integers, `k0` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDecomposition {
    pub m: BigInt,
    pub k0: BigInt,
}

pub fn q_decomposition(q: &Rational) -> Result<QDecomposition> {
    check_q(q)?;
    let (a, b) = (q.numer().clone(), q.denom().clone());
    if b.is_even() {
        Ok(QDecomposition { m: a, k0: b })
    } else {
        Ok(QDecomposition {
            m: a * 2,
            k0: b * 2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn normalized_values() {
        let s = normalized_sequence(2, 4).unwrap();
        assert_eq!(s.values(), &[q("1"), q("1/2"), q("1"), q("15/4")]);
        assert_eq!(normalized_sequence(3, 2).unwrap().values()[1], q("1"));
        for n in 2..8 {
            let s = normalized_sequence(n, 3).unwrap();
            let nn = i64::from(n);
            assert_eq!(s.values()[0], q("1"));
            assert_eq!(s.values()[1], Rational::ratio(nn - 1, 2));
            assert_eq!(s.values()[2], Rational::ratio((nn - 1) * (2 * nn - 1), 3));
            assert!(s.values().iter().all(Rational::is_positive));
        }
        assert!(normalized_sequence(1, 3).is_err());
        assert!(normalized_sequence(2, 0).is_err());
    }

    #[test]
    fn small_s_values() {
        let half = q("1/2");
        assert_eq!(s_value(2, &half, 2).unwrap(), q("0"));
        assert_eq!(s_value(2, &half, 3).unwrap(), q("1/4"));
        assert_eq!(s_value(2, &half, 4).unwrap(), q("-1"));
        assert!(s_value(2, &q("0"), 2).is_err());
        assert!(s_value(2, &half, 0).is_err());
    }

    #[test]
    fn scan_stops_at_first_negative() {
        let rep = min_negative_r(2, &q("1/2"), 10).unwrap();
        assert_eq!(rep.min_negative_r, Some(4));
        assert_eq!(rep.rows.len(), 4);
        assert_eq!(rep.min_negative_from_rows(), Some(4));
        let s: Vec<_> = rep.rows.iter().map(|r| r.s.clone()).collect();
        assert_eq!(s, vec![q("1/2"), q("0"), q("1/4"), q("-1")]);
    }

    #[test]
    fn scan_reports_absence() {
        let rep = min_negative_r(2, &q("1/2"), 3).unwrap();
        assert_eq!(rep.min_negative_r, None);
        assert_eq!(rep.rows.len(), 3);
        assert_eq!(rep.r_max, 3);
    }

    #[test]
    fn decompositions() {
        let d = |s: &str| {
            let d = q_decomposition(&q(s)).unwrap();
            (d.m, d.k0)
        };
        assert_eq!(d("1/2"), (BigInt::from(1), BigInt::from(2)));
        assert_eq!(d("3/4"), (BigInt::from(3), BigInt::from(4)));
        assert_eq!(d("2/3"), (BigInt::from(4), BigInt::from(6)));
        assert_eq!(d("5"), (BigInt::from(10), BigInt::from(2)));
        assert!(q_decomposition(&q("-1")).is_err());
    }

    #[test]
    fn csv_layout() {
        let rep = min_negative_r(2, &q("1/2"), 10).unwrap();
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "r,S\n1,1/2\n2,0\n3,1/4\n4,-1\n"
        );
    }

    #[test]
    fn grid_preserves_order() {
        let qs = vec![q("3"), q("1/2"), q("2")];
        let reps = scan_grid(2, &qs, 50).unwrap();
        for (rep, qq) in reps.iter().zip(&qs) {
            assert_eq!(&rep.q, qq);
            assert_eq!(rep, &min_negative_r(2, qq, 50).unwrap());
        }
    }
}
