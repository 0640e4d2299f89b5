//! Pareto dominance under minimization.

use crate::error::{Error, Result};

/// `true` iff `a` is no worse than `b` everywhere and strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::contract(format!(
            "dominates: objective lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    Ok(dominates_unchecked(a, b))
}

/// Length-unchecked dominance for hot loops over vectors known to share `m`.
#[inline]
pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}
