//! Truncated double series Σ_{m,n≤c} μ(m)μ(n)/(m²n²) · B(m,n) whose limits are
//! the conjectured variances.
//!
//! B(m,n) is mn times the limiting average of the four-term combination of
//! fractional-part pairs that appears when R_0(x+H) − R_0(x) is squared.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use super::exact_sum::sum_inverse_squares;
use super::mobius::{gcd_double_sum, mobius_square_sum, Parity};
use super::pairs::{closed_form_times_24, shifted_limit_times_4mn, Shift};
use crate::arith::mobius_table;
use crate::error::{Error, Result};
use crate::int_sieve::limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesVariant {
    /// H = x
    Hx,
    /// H = ⌊x^δ⌋
    HxDelta,
    /// H = 2⌊x^δ⌋
    H2xDelta,
    /// H = 2⌊x^δ⌋ + 1
    H2xDelta1,
}

impl SeriesVariant {
    pub const ALL: [SeriesVariant; 4] = [
        SeriesVariant::Hx,
        SeriesVariant::HxDelta,
        SeriesVariant::H2xDelta,
        SeriesVariant::H2xDelta1,
    ];

    fn shift(self) -> Shift {
        match self {
            SeriesVariant::Hx | SeriesVariant::HxDelta => Shift::XDelta,
            SeriesVariant::H2xDelta => Shift::TwoXDelta,
            SeriesVariant::H2xDelta1 => Shift::TwoXDelta1,
        }
    }
}

impl fmt::Display for SeriesVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesVariant::Hx => "hx",
            SeriesVariant::HxDelta => "xdelta",
            SeriesVariant::H2xDelta => "2xdelta",
            SeriesVariant::H2xDelta1 => "2xdelta1",
        })
    }
}

impl FromStr for SeriesVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeriesVariant::ALL
            .into_iter()
            .find(|v| v.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown series variant `{s}`")))
    }
}

/// 24 × B(m,n).
fn bracket_times_24(variant: SeriesVariant, m: u64, n: u64) -> i128 {
    let plain = closed_form_times_24(m, n, 1, 1);
    match variant {
        SeriesVariant::Hx => {
            plain - closed_form_times_24(n, m, 2, 1) - closed_form_times_24(m, n, 2, 1)
                + closed_form_times_24(m, n, 2, 2)
        }
        v => {
            // the doubly shifted pair averages like the unshifted one
            let s = v.shift();
            2 * plain - 6 * (shifted_limit_times_4mn(n, m, s) + shifted_limit_times_4mn(m, n, s))
        }
    }
}

/// B(m,n) for the given variant.
pub fn pair_bracket(variant: SeriesVariant, m: u64, n: u64) -> Result<BigRational> {
    if m == 0 || n == 0 {
        return Err(Error::param("m, n", "moduli must be positive"));
    }
    Ok(BigRational::new(
        BigInt::from(bracket_times_24(variant, m, n)),
        BigInt::from(24),
    ))
}

/// Largest cutoff accepted by the series evaluators (the bucket table has cutoff² slots).
pub const SERIES_MAX_CUTOFF: u64 = 5000;

fn check_cutoff(cutoff: u64) -> Result<()> {
    if cutoff == 0 {
        return Err(Error::EmptyRange("cutoff must be at least 1"));
    }
    if cutoff > SERIES_MAX_CUTOFF {
        return Err(Error::bound("series cutoff", cutoff as u128, SERIES_MAX_CUTOFF as u128));
    }
    Ok(())
}

/// Σ_{m,n≤cutoff} μ(m)μ(n)/(m²n²)·B(m,n), summing the per-pair closed forms directly.
pub fn theorem_series_value(variant: SeriesVariant, cutoff: u64) -> Result<BigRational> {
    check_cutoff(cutoff)?;
    let mu = mobius_table(cutoff as usize);
    let support: Vec<u64> = (1..=cutoff).filter(|&n| mu[n as usize] != 0).collect();
    // bucket by mn: the term is μμ·24B / (24·(mn)²)
    let mut buckets: Vec<i64> = vec![0; (cutoff * cutoff + 1) as usize];
    for &m in &support {
        for &n in &support {
            let sign = (mu[m as usize] * mu[n as usize]) as i128;
            buckets[(m * n) as usize] += (sign * bracket_times_24(variant, m, n)) as i64;
        }
    }
    let terms: Vec<(i64, u64)> = buckets
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (c, k as u64))
        .collect();
    Ok(sum_inverse_squares(&terms) / BigRational::from_integer(BigInt::from(24)))
}

/// The same truncated series assembled from parity-restricted Möbius and gcd sums.
///
/// With d = gcd(m,n) and m, n squarefree (the only pairs μ(m)μ(n) keeps), B
/// depends only on d and the parities of m and n:
/// H = x gives (d²−1)/12 for odd/odd, −(d²−1)/24 for mixed and (d²+2)/12 for
/// even/even; the shifted variants give (d²−1)/6, corrected by ∓1/2 when both
/// are even. Each piece is a gcd sum minus a product of Möbius sums.
pub fn series_assembly(variant: SeriesVariant, cutoff: u64) -> Result<BigRational> {
    check_cutoff(cutoff)?;
    use Parity::*;
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    match variant {
        SeriesVariant::Hx => {
            let (me, mo) = (mobius_square_sum(Even, cutoff)?, mobius_square_sum(Odd, cutoff)?);
            let g_oo = gcd_double_sum(Odd, Odd, cutoff)?;
            let g_eo = gcd_double_sum(Even, Odd, cutoff)?;
            let g_oe = gcd_double_sum(Odd, Even, cutoff)?;
            let g_ee = gcd_double_sum(Even, Even, cutoff)?;
            let mixed = &me * &mo;
            Ok(r(1, 12) * (g_oo - &mo * &mo) - r(1, 24) * (g_eo - &mixed) - r(1, 24) * (g_oe - &mixed)
                + r(1, 12) * (g_ee + r(2, 1) * &me * &me))
        }
        v => {
            let all = mobius_square_sum(All, cutoff)?;
            let g = gcd_double_sum(All, All, cutoff)?;
            let base = r(1, 6) * (g - &all * &all);
            let me = mobius_square_sum(Even, cutoff)?;
            let even_even = &me * &me;
            Ok(match v {
                SeriesVariant::H2xDelta => base - r(1, 2) * even_even,
                SeriesVariant::H2xDelta1 => base + r(1, 2) * even_even,
                _ => base,
            })
        }
    }
}

/// Limit of the series as the cutoff grows.
pub fn series_limit(variant: SeriesVariant) -> f64 {
    match variant {
        SeriesVariant::Hx | SeriesVariant::HxDelta => limits::variance_h(),
        SeriesVariant::H2xDelta => limits::variance_even_h(),
        SeriesVariant::H2xDelta1 => limits::variance_odd_h(),
    }
}
