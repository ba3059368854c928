//! Diastasis coefficient blocks over `CP^d` with `lambda` times the
//! Fubini-Study metric.
//!
//! The base diastasis is `D = lambda log(1 + |z|^2)`, so
//! `exp(N' D) = (1 + |z|^2)^(lambda N')`. Rotation invariance makes every
//! coefficient matrix diagonal in the monomial basis, with the entry at the
//! multi-index `alpha` equal to `N (N-1) ... (N-|alpha|+1) / alpha!`.
//!
//! The block at level `r` of the total-space diastasis is `h_r(u, m)` times the
//! coefficient matrix of `exp((r k0/2 + m) D)`. Positive semidefiniteness of
//! every block is necessary for a Kähler immersion into projective space.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::{factorial, generalized_binomial, Rational};
use crate::potential::{h_values, CalabiParams, HrValue};
use crate::series::TruncatedSeries;

/// Coefficient-matrix cutoff used by [`eh_block_scan`].
pub const DEFAULT_BLOCK_CUTOFF: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FubiniStudyBase {
    d: u32,
    lambda: u32,
}

impl FubiniStudyBase {
    pub fn new(d: u32, lambda: u32) -> Result<Self> {
        if d < 1 {
            return Err(invalid("base dimension d must be at least 1"));
        }
        if lambda < 1 {
            return Err(invalid("metric multiple lambda must be at least 1"));
        }
        Ok(FubiniStudyBase { d, lambda })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// Einstein constant `2 (d + 1) / lambda`.
    pub fn k0(&self) -> Rational {
        Rational::ratio(2 * (i64::from(self.d) + 1), i64::from(self.lambda))
    }

    /// Whether `k0 / 2` is a positive integer.
    pub fn half_k0_is_integer(&self) -> bool {
        (self.d + 1).is_multiple_of(self.lambda)
    }

    /// Unit-FS exponent `lambda (r k0/2 + m)`.
    pub fn exponent(&self, r: usize, m: &Rational) -> Rational {
        let half_k0 = self.k0() * Rational::ratio(1, 2);
        Rational::from(i64::from(self.lambda)) * (half_k0 * Rational::from(r as i64) + m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PSD")]
    Psd,
    #[serde(rename = "not-PSD")]
    NotPsd,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Psd => "PSD",
            Verdict::NotPsd => "not-PSD",
        }
    }
}

/// Diagonal coefficient matrix of `(1 + |z|^2)^N` on monomials of degree
/// `0..=cutoff`, graded and lexicographic within each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    pub exponent: Rational,
    pub cutoff: usize,
    pub indices: Vec<Vec<u32>>,
    pub diagonal: Vec<Rational>,
}

impl CoeffMatrix {
    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        if row == col {
            self.diagonal[row].clone()
        } else {
            Rational::zero()
        }
    }

    /// Diagonal entries whose monomial has total degree `deg`.
    pub fn degree_entries(&self, deg: usize) -> Vec<Rational> {
        self.indices
            .iter()
            .zip(&self.diagonal)
            .filter(|(a, _)| a.iter().sum::<u32>() as usize == deg)
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|k| self.entry(i, k)).collect())
            .collect()
    }

    pub fn verdict(&self) -> Verdict {
        if self.diagonal.iter().any(Rational::is_negative) {
            Verdict::NotPsd
        } else {
            Verdict::Psd
        }
    }
}

/// Multi-indices of length `d` and total degree `deg`, lexicographically
/// descending (`z_1^deg` first).
fn monomials(d: usize, deg: u32) -> Vec<Vec<u32>> {
    if d == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials(d - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Coefficient matrix of `(1 + |z|^2)^N` on `C^d`, any rational `N`.
pub fn fs_coeff_matrix_with_exponent(d: u32, exponent: &Rational, cutoff: usize) -> CoeffMatrix {
    let mut indices = Vec::new();
    let mut diagonal = Vec::new();
    for deg in 0..=cutoff as u32 {
        let falling = generalized_binomial(exponent, deg) * Rational::from(factorial(deg));
        for alpha in monomials(d as usize, deg) {
            let denom: num_bigint::BigInt = alpha.iter().map(|&a| factorial(a)).product();
            let entry = falling
                .checked_div(&Rational::from(denom))
                .expect("factorials are nonzero");
            indices.push(alpha);
            diagonal.push(entry);
        }
    }
    CoeffMatrix {
        exponent: exponent.clone(),
        cutoff,
        indices,
        diagonal,
    }
}

/// Coefficient matrix of `exp((r k0/2 + m) D)` for the base diastasis `D`.
pub fn fs_coeff_matrix(
    base: &FubiniStudyBase,
    r: usize,
    m: u32,
    cutoff: usize,
) -> Result<CoeffMatrix> {
    if m < 1 || cutoff < 1 {
        return Err(invalid("need m >= 1 and cutoff >= 1"));
    }
    let n = base.exponent(r, &Rational::from(i64::from(m)));
    Ok(fs_coeff_matrix_with_exponent(base.d(), &n, cutoff))
}

/// Exact LDL^T with symmetric diagonal pivoting. PSD iff no negative pivot
/// appears and the block left over when the pivots run out is zero.
pub fn psd_check_dense(matrix: &[Vec<Rational>]) -> Result<Verdict> {
    let n = matrix.len();
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(invalid("matrix must be square"));
        }
        for k in 0..i {
            if row[k] != matrix[k][i] {
                return Err(Error::NotSymmetric { row: i, col: k });
            }
        }
    }
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][i].cmp(&a[j][j]))
            .expect("k < n");
        let pivot = a[p][p].clone();
        if pivot.is_negative() {
            return Ok(Verdict::NotPsd);
        }
        if pivot.is_zero() {
            // every remaining diagonal entry is zero
            let rest_zero = (k..n).all(|i| (k..n).all(|j| a[i][j].is_zero()));
            return Ok(if rest_zero {
                Verdict::Psd
            } else {
                Verdict::NotPsd
            });
        }
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let l = a[i][k].checked_div(&pivot)?;
            for j in k + 1..n {
                let delta = &l * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    Ok(Verdict::Psd)
}

pub fn psd_check(mat: &CoeffMatrix) -> Verdict {
    mat.verdict()
}

/// `b^r = h_r(u, m) c^{r,m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    pub r: usize,
    pub m: u32,
    pub scale: HrValue,
    pub base_matrix: CoeffMatrix,
    pub verdict: Verdict,
}

impl BlockMatrix {
    fn new(r: usize, m: u32, scale: HrValue, base_matrix: CoeffMatrix) -> Self {
        let base_psd = base_matrix.verdict() == Verdict::Psd;
        let has_positive = base_matrix.diagonal.iter().any(Rational::is_positive);
        let verdict = match scale.value.signum() {
            0 => Verdict::Psd,
            1 if base_psd => Verdict::Psd,
            -1 if !has_positive => Verdict::Psd,
            _ => Verdict::NotPsd,
        };
        BlockMatrix {
            r,
            m,
            scale,
            base_matrix,
            verdict,
        }
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        self.base_matrix
            .diagonal
            .iter()
            .map(|e| &self.scale.value * e)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub r: usize,
    pub scale: Rational,
    pub verdict: Verdict,
    pub exponent: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum BlockReport {
    Blocks {
        d: u32,
        lambda: u32,
        k0: Rational,
        c: Rational,
        first_negative_r: Option<usize>,
        blocks: Vec<BlockEntry>,
    },
    /// `k0 / 2` is not a positive integer, so no block analysis is needed.
    IntegralityFailure {
        d: u32,
        lambda: u32,
        k0: Rational,
        c: Rational,
    },
}

impl BlockReport {
    pub fn first_negative_r(&self) -> Option<usize> {
        match self {
            BlockReport::Blocks {
                first_negative_r, ..
            } => *first_negative_r,
            BlockReport::IntegralityFailure { .. } => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Result of [`eh_block_scan`] keeping the full matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockScan {
    Blocks {
        blocks: Vec<BlockMatrix>,
        first_negative_r: Option<usize>,
    },
    IntegralityFailure {
        k0: Rational,
    },
}

/// Blocks `r = 0..=r_max` with `m = 1`, `n = d + 1` and `k0 = 2 (d+1)/lambda`.
/// The `r = 0` block is the coefficient matrix of `exp(D) - 1` with scale 1.
pub fn eh_block_scan(base: &FubiniStudyBase, c: &Rational, r_max: usize) -> Result<BlockScan> {
    eh_block_scan_with_cutoff(base, c, r_max, DEFAULT_BLOCK_CUTOFF)
}

pub fn eh_block_scan_with_cutoff(
    base: &FubiniStudyBase,
    c: &Rational,
    r_max: usize,
    cutoff: usize,
) -> Result<BlockScan> {
    if !c.is_positive() {
        return Err(invalid(format!("c must be positive, got {c}")));
    }
    if !base.half_k0_is_integer() {
        return Ok(BlockScan::IntegralityFailure { k0: base.k0() });
    }
    let m = 1;
    let params = CalabiParams::new(base.d() + 1, base.k0(), c.clone())?;
    let scales = if r_max >= 1 {
        h_values(&params, &Rational::one(), r_max)?
    } else {
        Vec::new()
    };

    let mut blocks = Vec::with_capacity(r_max + 1);
    let mut mat0 = fs_coeff_matrix(base, 0, m, cutoff)?;
    mat0.diagonal[0] = Rational::zero();
    let unit = HrValue {
        r: 0,
        m: Rational::one(),
        value: Rational::one(),
    };
    blocks.push(BlockMatrix::new(0, m, unit, mat0));
    for scale in scales {
        let r = scale.r;
        let mat = fs_coeff_matrix(base, r, m, cutoff)?;
        blocks.push(BlockMatrix::new(r, m, scale, mat));
    }
    let first_negative_r = blocks
        .iter()
        .find(|b| b.scale.value.is_negative())
        .map(|b| b.r);
    Ok(BlockScan::Blocks {
        blocks,
        first_negative_r,
    })
}

pub fn block_report(base: &FubiniStudyBase, c: &Rational, scan: &BlockScan) -> BlockReport {
    match scan {
        BlockScan::IntegralityFailure { k0 } => BlockReport::IntegralityFailure {
            d: base.d(),
            lambda: base.lambda(),
            k0: k0.clone(),
            c: c.clone(),
        },
        BlockScan::Blocks {
            blocks,
            first_negative_r,
        } => BlockReport::Blocks {
            d: base.d(),
            lambda: base.lambda(),
            k0: base.k0(),
            c: c.clone(),
            first_negative_r: *first_negative_r,
            blocks: blocks
                .iter()
                .map(|b| BlockEntry {
                    r: b.r,
                    scale: b.scale.value.clone(),
                    verdict: b.verdict,
                    exponent: b.base_matrix.exponent.clone(),
                })
                .collect(),
        },
    }
}

fn log1p_series(order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero()];
    for k in 1..=order as i64 {
        coeffs.push(Rational::ratio(if k % 2 == 1 { 1 } else { -1 }, k));
    }
    TruncatedSeries::new(coeffs).expect("nonempty")
}

/// Checks `det(d^2 D / dz dzbar) = const * exp(-(k0/2) D)` through `t^degree`,
/// `t = |z|^2`, using `det = D'^(d-1) (D' + t D'')` for a radial potential.
pub fn det_metric_matches(base: &FubiniStudyBase, degree: usize) -> Result<bool> {
    let lambda = Rational::from(i64::from(base.lambda()));
    let diastasis = log1p_series(degree + 2).scale(&lambda);
    let d1 = diastasis.derivative()?;
    let d2 = d1.derivative()?;
    let t = TruncatedSeries::variable(d2.order());
    let radial = &d1 + &t.mul(&d2);
    let det = d1.pow_int(base.d() - 1).mul(&radial).truncate(degree);
    let det = det.scale(&det.coeff(0).recip()?);
    let half_k0 = base.k0() * Rational::ratio(-1, 2);
    let expected = diastasis.scale(&half_k0).exp_of()?.truncate(degree);
    Ok(det == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn diag(vals: &[&str]) -> Vec<Vec<Rational>> {
        let n = vals.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| if i == k { q(vals[i]) } else { Rational::zero() })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn unit_exponent() {
        let m = fs_coeff_matrix_with_exponent(1, &q("1"), 3);
        assert_eq!(m.diagonal, vec![q("1"), q("1"), q("0"), q("0")]);
    }

    #[test]
    fn cube_exponent() {
        let m = fs_coeff_matrix_with_exponent(1, &q("3"), 3);
        assert_eq!(&m.diagonal[1..], &[q("3"), q("3"), q("1")]);
        assert_eq!(m.verdict(), Verdict::Psd);
    }

    #[test]
    fn half_exponent_goes_negative() {
        let m = fs_coeff_matrix_with_exponent(1, &q("1/2"), 2);
        assert_eq!(m.degree_entries(2), vec![q("-1/8")]);
        assert_eq!(psd_check(&m), Verdict::NotPsd);
    }

    #[test]
    fn two_dimensional_multinomials() {
        let m = fs_coeff_matrix_with_exponent(2, &q("3"), 2);
        assert_eq!(
            m.indices,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
        // (1 + a + b)^3: a^2 -> 3, ab -> 6, b^2 -> 3
        assert_eq!(m.degree_entries(2), vec![q("3"), q("6"), q("3")]);
    }

    #[test]
    fn dense_psd() {
        assert_eq!(
            psd_check_dense(&diag(&["3", "3", "1"])).unwrap(),
            Verdict::Psd
        );
        assert_eq!(
            psd_check_dense(&diag(&["1", "-1/8"])).unwrap(),
            Verdict::NotPsd
        );
        let ones = vec![vec![q("1"), q("1")], vec![q("1"), q("1")]];
        assert_eq!(psd_check_dense(&ones).unwrap(), Verdict::Psd);
        let indefinite = vec![vec![q("0"), q("1")], vec![q("1"), q("0")]];
        assert_eq!(psd_check_dense(&indefinite).unwrap(), Verdict::NotPsd);
        let neg_det = vec![vec![q("1"), q("2")], vec![q("2"), q("1")]];
        assert_eq!(psd_check_dense(&neg_det).unwrap(), Verdict::NotPsd);
        assert_eq!(psd_check_dense(&[]).unwrap(), Verdict::Psd);
    }

    #[test]
    fn dense_rejects_asymmetric() {
        let m = vec![vec![q("1"), q("2")], vec![q("3"), q("1")]];
        assert!(matches!(
            psd_check_dense(&m),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn dense_agrees_with_diagonal_verdict() {
        for n in ["1", "3", "1/2", "5/2", "-1"] {
            let m = fs_coeff_matrix_with_exponent(2, &q(n), 4);
            assert_eq!(
                psd_check_dense(&m.to_dense()).unwrap(),
                m.verdict(),
                "N = {n}"
            );
        }
    }

    #[test]
    fn base_constants() {
        let b = FubiniStudyBase::new(1, 3).unwrap();
        assert_eq!(b.k0(), q("4/3"));
        assert!(!b.half_k0_is_integer());
        assert!(FubiniStudyBase::new(0, 1).is_err());
        assert!(FubiniStudyBase::new(1, 0).is_err());
        let b = FubiniStudyBase::new(2, 1).unwrap();
        assert_eq!(b.exponent(2, &q("1")), q("7"));
    }

    #[test]
    fn integrality_failure() {
        let b = FubiniStudyBase::new(1, 3).unwrap();
        let scan = eh_block_scan(&b, &q("1"), 6).unwrap();
        assert_eq!(scan, BlockScan::IntegralityFailure { k0: q("4/3") });
    }

    #[test]
    fn block_entries_are_scaled_base_entries() {
        let b = FubiniStudyBase::new(1, 2).unwrap();
        let BlockScan::Blocks { blocks, .. } = eh_block_scan(&b, &q("2/5"), 5).unwrap() else {
            panic!("expected blocks");
        };
        for blk in &blocks {
            let d = blk.diagonal();
            for (i, e) in d.iter().enumerate() {
                assert_eq!(e, &(&blk.scale.value * &blk.base_matrix.diagonal[i]));
            }
        }
    }

    #[test]
    fn det_identity() {
        assert!(det_metric_matches(&FubiniStudyBase::new(1, 1).unwrap(), 4).unwrap());
        assert!(det_metric_matches(&FubiniStudyBase::new(2, 1).unwrap(), 6).unwrap());
        assert!(det_metric_matches(&FubiniStudyBase::new(3, 2).unwrap(), 6).unwrap());
    }

    #[test]
    fn report_json_shape() {
        let b = FubiniStudyBase::new(1, 2).unwrap();
        let scan = eh_block_scan(&b, &q("1"), 4).unwrap();
        let rep = block_report(&b, &q("1"), &scan);
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["status"], "blocks");
        assert_eq!(v["first_negative_r"], 4);
        assert_eq!(v["blocks"][4]["scale"], "-2/3");
        assert_eq!(v["blocks"][4]["verdict"], "not-PSD");
        let back: BlockReport = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
    }
}
