use num_bigint::BigInt;

use super::{BellAlgorithm, InputSequence, PartitionSum};
use crate::error::{invalid, Error, Result};
use crate::exact::Rational;

/// Rows up to this order are re-checked against the partition sum on build.
const SPOT_CHECK_MAX_R: usize = 8;

/// Triangle of `B_{r,j}(x)` for `0 <= j <= r <= r_max`, grown one row per
/// appended argument.
///
/// Row `r` depends only on `x_1..x_r`, so appending `x_{r+1}` leaves every
/// existing row untouched. A finished table is read-only and `Sync`.
#[derive(Clone, Debug)]
pub struct BellTable {
    source: Vec<Rational>,
    // rows[r][j]; rows[0] = [1]
    rows: Vec<Vec<Rational>>,
    // Pascal row r-1, kept for the next push
    pascal: Vec<BigInt>,
}

impl BellTable {
    pub fn new() -> Self {
        BellTable {
            source: Vec::new(),
            rows: vec![vec![Rational::one()]],
            pascal: Vec::new(),
        }
    }

    pub(crate) fn from_values(values: Vec<Rational>) -> Self {
        let mut table = BellTable::new();
        for v in values {
            table.push(v);
        }
        table
    }

    /// Appends `x_{r+1}` and computes row `r + 1`.
    pub fn push(&mut self, value: Rational) {
        self.source.push(value);
        let r = self.source.len();

        // C(r-1, i-1) for i = 1..=r
        self.pascal = if r == 1 {
            vec![BigInt::from(1)]
        } else {
            let prev = &self.pascal;
            let mut next = Vec::with_capacity(r);
            next.push(BigInt::from(1));
            for k in 1..r - 1 {
                next.push(&prev[k - 1] + &prev[k]);
            }
            next.push(BigInt::from(1));
            next
        };

        let weights: Vec<Rational> = self
            .source
            .iter()
            .zip(&self.pascal)
            .map(|(x, c)| x * Rational::from(c.clone()))
            .collect();

        let mut row = vec![Rational::zero(); r + 1];
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            let mut acc = Rational::zero();
            for i in 1..=r + 1 - j {
                let prev = &self.rows[r - i];
                if j - 1 < prev.len() {
                    let b = &prev[j - 1];
                    if !b.is_zero() && !weights[i - 1].is_zero() {
                        acc += &weights[i - 1] * b;
                    }
                }
            }
            *slot = acc;
        }
        self.rows.push(row);
    }

    /// Appends arguments until the table reaches `r_max`.
    pub fn extend_from(&mut self, values: impl IntoIterator<Item = Rational>) {
        for v in values {
            self.push(v);
        }
    }

    pub fn r_max(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self) -> &[Rational] {
        &self.source
    }

    /// `B_{r,j}`; `j = 0` gives the Kronecker delta at `r = 0`.
    pub fn get(&self, r: usize, j: usize) -> &Rational {
        &self.rows[r][j]
    }

    /// `[B_{r,0}, B_{r,1}, ..., B_{r,r}]`.
    pub fn row(&self, r: usize) -> &[Rational] {
        &self.rows[r]
    }

    /// `sum_{j=1..r} w^j B_{r,j}`.
    pub fn weighted_row_sum(&self, r: usize, w: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut power = Rational::one();
        for b in &self.rows[r][1..] {
            power *= w;
            acc += &power * b;
        }
        acc
    }
}

impl Default for BellTable {
    fn default() -> Self {
        BellTable::new()
    }
}

/// Builds the full triangle up to `r_max <= len(x)`, re-checking the rows
/// `r <= 8` against the partition sum.
pub fn build_bell_table(x: &InputSequence, r_max: usize) -> Result<BellTable> {
    if r_max < 1 || r_max > x.len() {
        return Err(invalid(format!(
            "r_max must lie in 1..={}, got {r_max}",
            x.len()
        )));
    }
    let table = BellTable::from_values(x.values()[..r_max].to_vec());
    for r in 1..=r_max.min(SPOT_CHECK_MAX_R) {
        for j in 1..=r {
            let oracle = PartitionSum.partial(r, j, x)?;
            if &oracle != table.get(r, j) {
                return Err(Error::MethodDisagreement {
                    index: r,
                    left: table.get(r, j).to_string(),
                    right: oracle.to_string(),
                });
            }
        }
    }
    Ok(table)
}
