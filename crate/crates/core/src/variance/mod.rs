//! Var(N_β) over short intervals of F_q[T]: exact enumeration against the
//! character-sum formula, and the q → ∞ sweep.

mod bruteforce;
mod formula;
mod report;

pub use bruteforce::{bruteforce_variance, bruteforce_variance_full, interval_class_sums, BruteForce, BRUTEFORCE_MAX_SIZE};
pub use formula::{formula_variance, formula_variance_with, CharacterSplit};
pub use report::{asymptotic_sweep, variance_report, VarianceReport, REPORT_CSV_HEADER};

use crate::error::{Error, Result};

/// Checks 0 ≤ h ≤ n − 2.
pub(crate) fn check_nh(n: usize, h: usize) -> Result<()> {
    if n < 2 || h > n - 2 {
        return Err(Error::param("h", format!("need 0 ≤ h ≤ n − 2, got n = {n}, h = {h}")));
    }
    Ok(())
}
