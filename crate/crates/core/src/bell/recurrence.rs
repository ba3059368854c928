use super::{check_indices, BellAlgorithm, BellTable, InputSequence};
use crate::error::Result;
use crate::exact::Rational;
use crate::registry::Named;

/// `B_{r,j} = sum_{i=1}^{r-j+1} C(r-1, i-1) x_i B_{r-i, j-1}` with `B_{0,0} = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Recurrence;

impl Named for Recurrence {
    fn name(&self) -> &'static str {
        "recurrence"
    }
}

impl BellAlgorithm for Recurrence {
    fn partial(&self, r: usize, j: usize, x: &InputSequence) -> Result<Rational> {
        check_indices(r, j, x)?;
        // Row r only reads x_1..x_{r-j+1}; pad the rest so the table can grow to r.
        let mut values: Vec<Rational> = x.values().iter().take(r).cloned().collect();
        values.resize(r, Rational::zero());
        let table = BellTable::from_values(values);
        Ok(table.get(r, j).clone())
    }

    fn complete(&self, r: usize, x: &InputSequence) -> Result<Rational> {
        if r == 0 {
            return Err(crate::error::invalid(
                "complete Bell polynomial Y_0 is not defined here",
            ));
        }
        check_indices(r, 1, x)?;
        let table = BellTable::from_values(x.values()[..r].to_vec());
        Ok(table.row(r)[1..].iter().sum())
    }
}
