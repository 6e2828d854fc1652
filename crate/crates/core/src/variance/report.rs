use num::{BigRational, One, ToPrimitive};
use rayon::prelude::*;

use super::bruteforce::bruteforce_variance;
use super::check_nh;
use super::formula::{formula_variance_with, CharacterSplit};
use crate::charlfun::BetaWeights;
use crate::error::Result;
use crate::ffpoly::FieldCtx;

/// Both evaluations of Var(N_β) at one (q, n, h).
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceReport {
    pub q: u64,
    pub n: usize,
    pub h: usize,
    pub mean_bruteforce: BigRational,
    /// q^h·(1 − 1/q), the centering constant written as q^h/ζ_q(2).
    pub mean_q_h_convention: BigRational,
    pub var_bruteforce: BigRational,
    pub var_formula: f64,
    /// var_bruteforce · q^{h+3}.
    pub normalized: f64,
    pub split: CharacterSplit,
    /// Set when n − h < 5, where the equidistribution input to the q → ∞ limit is unavailable.
    pub flagged: bool,
}

impl VarianceReport {
    pub fn var_bruteforce_f64(&self) -> f64 {
        self.var_bruteforce.to_f64().unwrap_or(f64::NAN)
    }

    /// |var_formula − var_bruteforce| / var_bruteforce.
    pub fn relative_gap(&self) -> f64 {
        let exact = self.var_bruteforce_f64();
        (self.var_formula - exact).abs() / exact
    }

    pub fn census(&self) -> (u64, u64, u64) {
        self.split.census
    }

    pub fn nonprimitive_share(&self) -> f64 {
        self.split.nonprimitive_share()
    }

    pub fn max_rh_violation(&self) -> f64 {
        self.split.max_rh_violation
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.11e},{:.11e},{:.11e},{:.11e}",
            self.q,
            self.n,
            self.h,
            self.var_bruteforce.numer(),
            self.var_bruteforce.denom(),
            self.var_formula,
            self.normalized,
            self.nonprimitive_share(),
            self.max_rh_violation()
        )
    }
}

pub const REPORT_CSV_HEADER: &str =
    "q,n,h,var_bruteforce_num,var_bruteforce_den,var_formula,normalized,nonprimitive_share,max_rh_violation";

pub fn variance_report(ctx: FieldCtx, n: usize, h: usize) -> Result<VarianceReport> {
    check_nh(n, h)?;
    let beta = BetaWeights::new(ctx, n)?;
    let exact = bruteforce_variance(beta.table(), n, h)?;
    let split = formula_variance_with(&beta, n, h)?;
    let q = ctx.q();
    let q_r = BigRational::from_integer(q.into());
    let normalized = (&exact.variance * q_r.pow(h as i32 + 3)).to_f64().unwrap_or(f64::NAN);
    Ok(VarianceReport {
        q,
        n,
        h,
        mean_q_h_convention: q_r.pow(h as i32) * (BigRational::one() - q_r.recip()),
        mean_bruteforce: exact.mean,
        var_bruteforce: exact.variance,
        var_formula: split.variance(),
        normalized,
        split,
        flagged: n - h < 5,
    })
}

/// One report per prime, in input order. Runs on the current rayon pool.
pub fn asymptotic_sweep(primes: &[u64], n: usize, h: usize) -> Result<Vec<VarianceReport>> {
    check_nh(n, h)?;
    primes
        .par_iter()
        .map(|&q| variance_report(FieldCtx::new(q)?, n, h))
        .collect()
}
