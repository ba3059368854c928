//! Partial and complete exponential Bell polynomials evaluated at exact
//! rational arguments.
//!
//! `B_{r,j}(x_1, ..., x_{r-j+1})` sums over the set partitions of `r` labelled
//! elements into `j` blocks, each block of size `i` weighted by `x_i`. Two
//! interchangeable evaluators sit behind [`BellAlgorithm`]:
//!
//! - [`PartitionSum`] enumerates the integer solutions of
//!   `s_1 + 2 s_2 + ... = r`, `s_1 + s_2 + ... = j` and sums the multinomial
//!   terms directly. Exponential in `r`; used as the oracle.
//! - [`Recurrence`] uses `B_{r,j} = sum_i C(r-1, i-1) x_i B_{r-i, j-1}`. This is
//!   also what [`BellTable`] runs, one row at a time.

mod partition;
mod recurrence;
mod table;

pub use partition::PartitionSum;
pub use recurrence::Recurrence;
pub use table::{build_bell_table, BellTable};

use crate::error::{invalid, Result};
use crate::exact::Rational;
use crate::registry::{Named, Registry};

/// The argument list `(x_1, ..., x_R)`; indexing is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputSequence {
    values: Vec<Rational>,
}

impl InputSequence {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("input sequence must have at least one value"));
        }
        Ok(InputSequence { values })
    }

    /// `(1, 1, ..., 1)` of the given length.
    pub fn ones(len: usize) -> Result<Self> {
        InputSequence::new(vec![Rational::one(); len])
    }

    /// `x_l` for `1 <= l <= len`.
    pub fn get(&self, l: usize) -> &Rational {
        &self.values[l - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }
}

pub(crate) fn check_indices(r: usize, j: usize, x: &InputSequence) -> Result<()> {
    if j < 1 || j > r {
        return Err(invalid(format!("need 1 <= j <= r, got r = {r}, j = {j}")));
    }
    if x.len() < r - j + 1 {
        return Err(invalid(format!(
            "B_{{{r},{j}}} needs {} arguments, got {}",
            r - j + 1,
            x.len()
        )));
    }
    Ok(())
}

/// One way of evaluating `B_{r,j}(x)`.
pub trait BellAlgorithm: Named + Send + Sync {
    fn partial(&self, r: usize, j: usize, x: &InputSequence) -> Result<Rational>;

    /// `Y_r(x) = sum_{j=1..r} B_{r,j}(x)`. `r = 0` is rejected.
    fn complete(&self, r: usize, x: &InputSequence) -> Result<Rational> {
        if r == 0 {
            return Err(invalid("complete Bell polynomial Y_0 is not defined here"));
        }
        (1..=r).map(|j| self.partial(r, j, x)).sum()
    }
}

pub type BellRegistry = Registry<dyn BellAlgorithm>;

/// `recurrence` (the production path) and `partition`.
pub fn bell_registry() -> BellRegistry {
    let mut reg = Registry::new("Bell algorithm");
    reg.register(Box::new(Recurrence) as Box<dyn BellAlgorithm>);
    reg.register(Box::new(PartitionSum));
    reg
}

pub fn partial_bell_partition(r: usize, j: usize, x: &InputSequence) -> Result<Rational> {
    PartitionSum.partial(r, j, x)
}

pub fn partial_bell_recurrence(r: usize, j: usize, x: &InputSequence) -> Result<Rational> {
    Recurrence.partial(r, j, x)
}

/// `Y_r(x_1, ..., x_r)` via the recurrence.
pub fn complete_bell(r: usize, x: &InputSequence) -> Result<Rational> {
    Recurrence.complete(r, x)
}
