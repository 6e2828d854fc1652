//! Period sums of fractional-part products {a·y/m}·{b·y/n} and their closed forms.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::int_sieve::{Exponent, FloorRootTracker};

/// What is added to x inside the second fractional part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shift {
    None,
    /// ⌊x^δ⌋
    XDelta,
    /// 2⌊x^δ⌋
    TwoXDelta,
    /// 2⌊x^δ⌋ + 1
    TwoXDelta1,
}

impl Shift {
    pub fn apply(self, floor_root: u64) -> u64 {
        match self {
            Shift::None => 0,
            Shift::XDelta => floor_root,
            Shift::TwoXDelta => 2 * floor_root,
            Shift::TwoXDelta1 => 2 * floor_root + 1,
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shift::None => "none",
            Shift::XDelta => "xdelta",
            Shift::TwoXDelta => "2xdelta",
            Shift::TwoXDelta1 => "2xdelta1",
        })
    }
}

impl FromStr for Shift {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Shift::None),
            "xdelta" => Ok(Shift::XDelta),
            "2xdelta" => Ok(Shift::TwoXDelta),
            "2xdelta1" => Ok(Shift::TwoXDelta1),
            _ => Err(Error::Parse(format!("unknown shift `{s}`"))),
        }
    }
}

/// The pair {a·y/m}·{b·y/n}, optionally with y shifted in the second slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FracPairSpec {
    pub m: u64,
    pub n: u64,
    pub a: u8,
    pub b: u8,
    pub shift: Shift,
}

impl FracPairSpec {
    /// Unshifted pair; `a`, `b` must be 1 or 2.
    pub fn new(m: u64, n: u64, a: u8, b: u8) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::param("m, n", "moduli must be positive"));
        }
        if !matches!(a, 1 | 2) || !matches!(b, 1 | 2) {
            return Err(Error::param("a, b", format!("multipliers must be 1 or 2, got ({a}, {b})")));
        }
        Ok(FracPairSpec {
            m,
            n,
            a,
            b,
            shift: Shift::None,
        })
    }

    pub fn with_shift(self, shift: Shift) -> Self {
        FracPairSpec { shift, ..self }
    }

    /// Which case of the closed form applies.
    pub fn branch(&self) -> &'static str {
        let (me, ne) = (self.m % 2 == 0, self.n % 2 == 0);
        match (self.a, self.b) {
            (1, 1) => "plain",
            (2, 1) if me => "double-first/m-even",
            (2, 1) => "double-first/m-odd",
            (1, 2) if ne => "double-second/n-even",
            (1, 2) => "double-second/n-odd",
            _ => match (me, ne) {
                (true, true) => "double-both/even-even",
                (true, false) => "double-both/even-odd",
                (false, true) => "double-both/odd-even",
                (false, false) => "double-both/odd-odd",
            },
        }
    }
}

/// Σ_{k=1}^{mn} {a(x0+k)/m}·{b(x0+k)/n}, by direct summation.
pub fn frac_pair_period_sum(spec: &FracPairSpec, x0: u64) -> Result<BigRational> {
    if spec.shift != Shift::None {
        return Err(Error::param("shift", "period sums are defined for unshifted pairs only"));
    }
    FracPairSpec::new(spec.m, spec.n, spec.a, spec.b)?;
    let (m, n) = (spec.m as u128, spec.n as u128);
    let (a, b) = (spec.a as u128, spec.b as u128);
    let start = x0 as u128 % (m * n);
    let mut acc: u128 = 0;
    for k in 1..=m * n {
        let y = start + k;
        acc += (a * y % m) * (b * y % n);
    }
    Ok(BigRational::new(BigInt::from(acc), BigInt::from(m * n)))
}

/// 24 × the closed-form period sum.
pub(crate) fn closed_form_times_24(m: u64, n: u64, a: u8, b: u8) -> i128 {
    let (mi, ni) = (m as i128, n as i128);
    let d = gcd(m, n) as i128;
    let (me, ne) = (m % 2 == 0, n % 2 == 0);
    match (a, b) {
        (1, 1) => 6 * (mi - 1) * (ni - 1) + 2 * (d * d - 1),
        (2, 1) if me => {
            let h = gcd(m / 2, n) as i128;
            6 * (mi - 2) * (ni - 1) + 4 * (h * h - 1)
        }
        (2, 1) => 6 * (mi - 1) * (ni - 1) + (d * d - 1),
        (1, 2) => closed_form_times_24(n, m, 2, 1),
        (2, 2) => match (me, ne) {
            (true, true) => 6 * (mi - 2) * (ni - 2) + 2 * (d * d - 4),
            (true, false) => 6 * (mi - 2) * (ni - 1) + 2 * (d * d - 1),
            (false, true) => 6 * (mi - 1) * (ni - 2) + 2 * (d * d - 1),
            (false, false) => 6 * (mi - 1) * (ni - 1) + 2 * (d * d - 1),
        },
        _ => unreachable!("multipliers are validated by FracPairSpec::new"),
    }
}

/// Closed form of the period sum; independent of the starting point.
///
/// The (1, 2) case is the (2, 1) formula with the roles of m and n exchanged.
pub fn closed_form_pair_sum(spec: &FracPairSpec) -> Result<BigRational> {
    if spec.shift != Shift::None {
        return Err(Error::param("shift", "use shifted_pair_limit for shifted pairs"));
    }
    FracPairSpec::new(spec.m, spec.n, spec.a, spec.b)?;
    let v = closed_form_times_24(spec.m, spec.n, spec.a, spec.b);
    Ok(BigRational::new(BigInt::from(v), BigInt::from(24)))
}

/// 4mn × the limiting average of {x/m}·{(x+s)/n} for a shifted s, assuming
/// ⌊x^δ⌋ mod n is uncorrelated with x mod m.
pub(crate) fn shifted_limit_times_4mn(m: u64, n: u64, shift: Shift) -> i128 {
    let base = (m as i128 - 1) * (n as i128 - 1);
    let both_even = m % 2 == 0 && n % 2 == 0;
    match shift {
        Shift::None => closed_form_times_24(m, n, 1, 1) / 6,
        Shift::XDelta => base,
        Shift::TwoXDelta if both_even => base + 1,
        Shift::TwoXDelta1 if both_even => base - 1,
        Shift::TwoXDelta | Shift::TwoXDelta1 => base,
    }
}

/// Limiting average of {x/m}·{(x+s)/n} (for a shift, under the no-correlation assumption).
pub fn shifted_pair_limit(m: u64, n: u64, shift: Shift) -> Result<BigRational> {
    if m == 0 || n == 0 {
        return Err(Error::param("m, n", "moduli must be positive"));
    }
    Ok(BigRational::new(
        BigInt::from(shifted_limit_times_4mn(m, n, shift)),
        BigInt::from(4 * m as u128 * n as u128),
    ))
}

/// Empirical (1/X) Σ_{x≤X} {x/m}·{(x+s(x))/n}.
pub fn average_shifted_pair(m: u64, n: u64, shift: Shift, delta: Exponent, x_max: u64) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::param("m, n", "moduli must be positive"));
    }
    if x_max == 0 {
        return Err(Error::EmptyRange("X must be at least 1"));
    }
    if shift != Shift::None && delta.is_one() {
        return Err(Error::param("delta", "must satisfy 0 < delta < 1"));
    }
    let mut root = FloorRootTracker::new(delta);
    let mut acc: u128 = 0;
    for x in 1..=x_max {
        let s = if shift == Shift::None { 0 } else { shift.apply(root.at(x)) };
        acc += (x % m) as u128 * ((x + s) % n) as u128;
    }
    Ok(acc as f64 / (m as f64 * n as f64 * x_max as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn period_sum_examples() {
        let s = FracPairSpec::new(2, 2, 1, 1).unwrap();
        assert_eq!(frac_pair_period_sum(&s, 0).unwrap(), q(1, 2));
        assert_eq!(closed_form_pair_sum(&s).unwrap(), q(1, 2));
        let s = FracPairSpec::new(1, 7, 1, 1).unwrap();
        assert_eq!(frac_pair_period_sum(&s, 3).unwrap(), q(0, 1));
        let s = FracPairSpec::new(3, 5, 2, 1).unwrap();
        assert_eq!(frac_pair_period_sum(&s, 0).unwrap(), q(2, 1));
        assert_eq!(closed_form_pair_sum(&s).unwrap(), q(2, 1));
    }

    #[test]
    fn closed_form_branches() {
        for d in 1..12u64 {
            let s = FracPairSpec::new(d, d, 1, 1).unwrap();
            let want = q(((d - 1) * (d - 1)) as i64, 4) + q((d * d - 1) as i64, 12);
            assert_eq!(closed_form_pair_sum(&s).unwrap(), want);
        }
        assert_eq!(closed_form_pair_sum(&FracPairSpec::new(2, 2, 2, 2).unwrap()).unwrap(), q(0, 1));
        let s = FracPairSpec::new(4, 6, 2, 1).unwrap();
        assert_eq!(closed_form_pair_sum(&s).unwrap(), q(3, 1));
        assert_eq!(frac_pair_period_sum(&s, 0).unwrap(), q(3, 1));
        assert_eq!(s.branch(), "double-first/m-even");
    }

    #[test]
    fn rejects_bad_pair_parameters() {
        assert!(FracPairSpec::new(0, 3, 1, 1).is_err());
        assert!(FracPairSpec::new(2, 3, 3, 1).is_err());
        let s = FracPairSpec::new(2, 3, 1, 1).unwrap().with_shift(Shift::XDelta);
        assert!(frac_pair_period_sum(&s, 0).is_err());
        assert!(closed_form_pair_sum(&s).is_err());
    }

    #[test]
    fn shifted_limits() {
        for shift in [Shift::XDelta, Shift::TwoXDelta, Shift::TwoXDelta1] {
            for n in 1..6 {
                assert_eq!(shifted_pair_limit(1, n, shift).unwrap(), q(0, 1));
            }
        }
        assert_eq!(shifted_pair_limit(2, 2, Shift::TwoXDelta).unwrap(), q(1, 8));
        assert_eq!(shifted_pair_limit(2, 2, Shift::TwoXDelta1).unwrap(), q(0, 1));
        assert_eq!(shifted_pair_limit(3, 4, Shift::XDelta).unwrap(), q(6, 48));
        // unshifted limit is the period sum over mn
        assert_eq!(shifted_pair_limit(4, 6, Shift::None).unwrap(), q(1, 24) * closed_form_pair_sum(&FracPairSpec::new(4, 6, 1, 1).unwrap()).unwrap());
    }

    #[test]
    fn empirical_shifted_averages() {
        let d = Exponent::new(1, 2).unwrap();
        assert_eq!(average_shifted_pair(1, 5, Shift::TwoXDelta, d, 10_000).unwrap(), 0.0);
        let even = average_shifted_pair(2, 2, Shift::TwoXDelta, d, 1_000_000).unwrap();
        let odd = average_shifted_pair(2, 2, Shift::TwoXDelta1, d, 1_000_000).unwrap();
        assert!((even - 0.125).abs() < 0.01, "{even}");
        assert!(odd.abs() < 0.01, "{odd}");
        let plain = average_shifted_pair(3, 5, Shift::None, d, 150_000).unwrap();
        // X is a multiple of the period, so the average is exactly 2/15
        assert!((plain - 2.0 / 15.0).abs() < 1e-12, "{plain}");
    }

    proptest! {
        #[test]
        fn period_sum_is_periodic(m in 1u64..25, n in 1u64..25, a in 1u8..3, b in 1u8..3, x0 in 0u64..10_000) {
            let s = FracPairSpec::new(m, n, a, b).unwrap();
            prop_assert_eq!(frac_pair_period_sum(&s, x0).unwrap(), frac_pair_period_sum(&s, x0 + m * n).unwrap());
        }

        #[test]
        fn closed_form_matches_oracle(m in 1u64..40, n in 1u64..40, a in 1u8..3, b in 1u8..3, x0 in 0u64..1000) {
            let s = FracPairSpec::new(m, n, a, b).unwrap();
            prop_assert_eq!(frac_pair_period_sum(&s, x0).unwrap(), closed_form_pair_sum(&s).unwrap());
        }
    }
}
