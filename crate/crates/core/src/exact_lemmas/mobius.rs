//! Truncated Möbius series Σ μ(n)/n² and Σ μ(m)μ(n)·gcd(m,n)²/(m²n²), by parity.

use std::fmt;
use std::str::FromStr;

use num::BigRational;
use serde::{Deserialize, Serialize};

use super::exact_sum::sum_inverse_squares;
use crate::arith::{gcd, mobius_table};
use crate::error::{Error, Result};
use crate::int_sieve::ZETA2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, n: u64) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => n % 2 == 0,
            Parity::Odd => n % 2 == 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::All => "all",
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Parity::All),
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!("unknown parity `{s}`"))),
        }
    }
}

fn check_cutoff(cutoff: u64) -> Result<()> {
    if cutoff == 0 {
        return Err(Error::EmptyRange("cutoff must be at least 1"));
    }
    Ok(())
}

/// Σ_{n≤cutoff, n of the given parity} μ(n)/n², exactly.
pub fn mobius_square_sum(parity: Parity, cutoff: u64) -> Result<BigRational> {
    check_cutoff(cutoff)?;
    let mu = mobius_table(cutoff as usize);
    let terms: Vec<(i64, u64)> = (1..=cutoff)
        .filter(|&n| parity.admits(n) && mu[n as usize] != 0)
        .map(|n| (mu[n as usize] as i64, n))
        .collect();
    Ok(sum_inverse_squares(&terms))
}

/// Σ_{m,n≤cutoff} μ(m)μ(n)·gcd(m,n)²/(m²n²) over m, n of the given parities.
///
/// gcd(m,n)²/(m²n²) = 1/lcm(m,n)², so terms are bucketed by lcm before the
/// exact summation.
pub fn gcd_double_sum(parity_m: Parity, parity_n: Parity, cutoff: u64) -> Result<BigRational> {
    check_cutoff(cutoff)?;
    if cutoff > GCD_SUM_MAX_CUTOFF {
        return Err(Error::bound("gcd sum cutoff", cutoff as u128, GCD_SUM_MAX_CUTOFF as u128));
    }
    let mu = mobius_table(cutoff as usize);
    let pick = |p: Parity| -> Vec<u64> {
        (1..=cutoff)
            .filter(|&n| p.admits(n) && mu[n as usize] != 0)
            .collect()
    };
    let (ms, ns) = (pick(parity_m), pick(parity_n));
    let mut buckets: Vec<i32> = vec![0; (cutoff * cutoff + 1) as usize];
    for &m in &ms {
        for &n in &ns {
            let l = m / gcd(m, n) * n;
            buckets[l as usize] += (mu[m as usize] * mu[n as usize]) as i32;
        }
    }
    let terms: Vec<(i64, u64)> = buckets
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(l, &c)| (c as i64, l as u64))
        .collect();
    Ok(sum_inverse_squares(&terms))
}

/// The lcm buckets are a dense table of cutoff² counters.
pub const GCD_SUM_MAX_CUTOFF: u64 = 5000;

/// Limits of [`mobius_square_sum`] as the cutoff grows: 1/ζ(2), −1/(3ζ(2)), 4/(3ζ(2)).
pub fn mobius_square_limit(parity: Parity) -> f64 {
    match parity {
        Parity::All => 1.0 / ZETA2,
        Parity::Even => -1.0 / (3.0 * ZETA2),
        Parity::Odd => 4.0 / (3.0 * ZETA2),
    }
}

/// Limits of [`gcd_double_sum`].
pub fn gcd_double_limit(parity_m: Parity, parity_n: Parity) -> f64 {
    use Parity::*;
    match (parity_m, parity_n) {
        (All, All) => 1.0 / ZETA2,
        (Odd, Odd) => 4.0 / (3.0 * ZETA2),
        (Even, Odd) | (Odd, Even) => -1.0 / (3.0 * ZETA2),
        (Even, Even) => 1.0 / (3.0 * ZETA2),
        // a single `All` factor sums the two pieces it covers
        (All, p) | (p, All) => gcd_double_limit(Odd, p) + gcd_double_limit(Even, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, One, ToPrimitive, Zero};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn naive_mobius(p: Parity, c: u64) -> BigRational {
        let mu = mobius_table(c as usize);
        (1..=c)
            .filter(|&n| p.admits(n))
            .map(|n| q(mu[n as usize] as i64, (n * n) as i64))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Jordan's J_2(e) = e² ∏_{p|e}(1 − 1/p²), so that Σ_{e|d} J_2(e) = d².
    fn jordan2(e: u64) -> u64 {
        crate::arith::distinct_prime_factors(e)
            .into_iter()
            .fold(e * e, |acc, p| acc / (p * p) * (p * p - 1))
    }

    /// Σ_e J_2(e)·(Σ_{m≤c, e|m} μ(m)/m²)·(Σ_{n≤c, e|n} μ(n)/n²): expands gcd² over
    /// common divisors instead of evaluating it.
    fn jordan_oracle(pm: Parity, pn: Parity, c: u64) -> BigRational {
        let mu = mobius_table(c as usize);
        let mut total = BigRational::zero();
        for e in 1..=c {
            let side = |p: Parity| {
                (1..=c / e)
                    .map(|k| k * e)
                    .filter(|&n| p.admits(n))
                    .map(|n| q(mu[n as usize] as i64, (n * n) as i64))
                    .fold(BigRational::zero(), |a, b| a + b)
            };
            total += BigRational::from_integer(BigInt::from(jordan2(e))) * side(pm) * side(pn);
        }
        total
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius_square_sum(Parity::Even, 3).unwrap(), q(-1, 4));
        assert_eq!(mobius_square_sum(Parity::Odd, 1).unwrap(), BigRational::one());
        assert!(mobius_square_sum(Parity::All, 0).is_err());
        for c in [1, 2, 10, 97, 300] {
            for p in [Parity::All, Parity::Even, Parity::Odd] {
                assert_eq!(mobius_square_sum(p, c).unwrap(), naive_mobius(p, c));
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_double_sum(Parity::All, Parity::All, 1).unwrap(), BigRational::one());
        assert_eq!(gcd_double_sum(Parity::All, Parity::All, 2).unwrap(), q(3, 4));
    }

    #[test]
    fn gcd_sum_matches_divisor_expansion() {
        use Parity::*;
        for c in [1, 5, 30, 64] {
            for (pm, pn) in [(All, All), (Odd, Odd), (Even, Odd), (Odd, Even), (Even, Even), (All, Even)] {
                assert_eq!(gcd_double_sum(pm, pn, c).unwrap(), jordan_oracle(pm, pn, c), "{pm} {pn} {c}");
            }
        }
    }

    #[test]
    fn limits_are_consistent() {
        use Parity::*;
        assert!((mobius_square_limit(Even) + mobius_square_limit(Odd) - mobius_square_limit(All)).abs() < 1e-15);
        assert!((gcd_double_limit(All, All) - 0.6079271).abs() < 1e-7);
        let approx = mobius_square_sum(All, 2000).unwrap().to_f64().unwrap();
        assert!((approx - mobius_square_limit(All)).abs() < 1e-3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn parity_decomposition(c in 1u64..400) {
            let e = mobius_square_sum(Parity::Even, c).unwrap();
            let o = mobius_square_sum(Parity::Odd, c).unwrap();
            prop_assert_eq!(e + o, mobius_square_sum(Parity::All, c).unwrap());
        }

        #[test]
        fn even_sum_relation(c in 1u64..400) {
            let e = mobius_square_sum(Parity::Even, 2 * c).unwrap();
            let o = mobius_square_sum(Parity::Odd, c).unwrap();
            prop_assert_eq!(e, q(-1, 4) * o);
        }

        #[test]
        fn gcd_pieces_add_up(c in 1u64..60) {
            use Parity::*;
            let pieces = [(Odd, Odd), (Even, Odd), (Odd, Even), (Even, Even)]
                .map(|(a, b)| gcd_double_sum(a, b, c).unwrap());
            let total = pieces.into_iter().fold(BigRational::zero(), |a, b| a + b);
            prop_assert_eq!(total, gcd_double_sum(All, All, c).unwrap());
        }
    }
}
