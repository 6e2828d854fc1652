//! Empirical check that ⌊x^δ⌋ mod m is uncorrelated with x mod n.

use super::interval::{Exponent, FloorRootTracker};
use crate::error::{Error, Result};

/// Conditional residue counts: `counts[r_n][r_m]` is the number of x ≤ X with
/// x ≡ r_n (mod n) and ⌊x^δ⌋ ≡ r_m (mod m).
///
/// Rows are indexed by the conditioning class r_n, so every row of
/// [`AssumptionMatrix::frequency`] sums to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumptionMatrix {
    pub m: u64,
    pub n: u64,
    pub delta: Exponent,
    pub x_max: u64,
    pub counts: Vec<Vec<u64>>,
}

impl AssumptionMatrix {
    pub fn row_total(&self, r_n: usize) -> u64 {
        self.counts[r_n].iter().sum()
    }

    /// P(⌊x^δ⌋ ≡ r_m mod m | x ≡ r_n mod n).
    pub fn frequency(&self, r_n: usize, r_m: usize) -> f64 {
        self.counts[r_n][r_m] as f64 / self.row_total(r_n) as f64
    }

    /// Largest |frequency − 1/m| over the matrix.
    pub fn max_deviation(&self) -> f64 {
        let target = 1.0 / self.m as f64;
        (0..self.n as usize)
            .flat_map(|rn| (0..self.m as usize).map(move |rm| (rn, rm)))
            .map(|(rn, rm)| (self.frequency(rn, rm) - target).abs())
            .fold(0.0, f64::max)
    }
}

pub fn assumption_correlation_test(m: u64, n: u64, delta: Exponent, x_max: u64) -> Result<AssumptionMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::param("m, n", "moduli must be positive"));
    }
    if delta.is_one() {
        return Err(Error::param("delta", "must satisfy 0 < delta < 1"));
    }
    let needed = m.saturating_mul(n).saturating_mul(100);
    if x_max < needed {
        return Err(Error::param("X", format!("need X >= 100·m·n = {needed}")));
    }
    let mut counts = vec![vec![0u64; m as usize]; n as usize];
    let mut root = FloorRootTracker::new(delta);
    for x in 1..=x_max {
        let y = root.at(x);
        counts[(x % n) as usize][(y % m) as usize] += 1;
    }
    Ok(AssumptionMatrix {
        m,
        n,
        delta,
        x_max,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_one_gives_all_ones() {
        let d = Exponent::new(1, 3).unwrap();
        let a = assumption_correlation_test(1, 5, d, 1000).unwrap();
        for rn in 0..5 {
            assert_eq!(a.frequency(rn, 0), 1.0);
        }
        assert_eq!(a.max_deviation(), 0.0);
    }

    #[test]
    fn rows_normalize_exactly() {
        let d = Exponent::new(2, 3).unwrap();
        let a = assumption_correlation_test(3, 4, d, 5000).unwrap();
        let total: u64 = (0..4).map(|r| a.row_total(r)).sum();
        assert_eq!(total, 5000);
        for rn in 0..4 {
            let s: u64 = a.counts[rn].iter().sum();
            assert_eq!(s, a.row_total(rn));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let d = Exponent::new(1, 2).unwrap();
        assert!(assumption_correlation_test(0, 2, d, 1000).is_err());
        assert!(assumption_correlation_test(2, 3, d, 599).is_err());
        assert!(assumption_correlation_test(2, 3, Exponent::new(1, 1).unwrap(), 10_000).is_err());
    }
}
