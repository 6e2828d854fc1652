//! Remainder terms R_0(x), R_0(x;H) and their discrete moments.

use std::fmt;
use std::str::FromStr;

use num::{BigUint, Integer};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use super::sieve::{PrefixCursor, DEFAULT_BLOCK_SIZE};
use super::stats::{inv_zeta2, StatAccumulator};
use crate::error::{Error, Result};

/// A rational exponent δ = num/den in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponent {
    num: u32,
    den: u32,
}

impl Exponent {
    /// Requires 0 < num/den ≤ 1.
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::param("delta", format!("{num}/{den} is outside (0, 1]")));
        }
        let g = num.gcd(&den);
        Ok(Exponent {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected an exponent like `1/2`, got `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: u32 = n.parse().map_err(|_| bad())?;
        let d: u32 = d.parse().map_err(|_| bad())?;
        Exponent::new(n, d)
    }
}

/// ⌊x^{num/den}⌋ by integer root extraction.
pub fn floor_pow_root(x: u64, delta: Exponent) -> u64 {
    let p = BigUint::from(x).pow(delta.num);
    let r = p.nth_root(delta.den);
    u64::try_from(r).expect("x^delta fits in u64 for delta <= 1")
}

/// Tracks ⌊x^δ⌋ along increasing x without re-extracting roots.
#[derive(Debug, Clone)]
pub struct FloorRootTracker {
    delta: Exponent,
    x: u64,
    y: u64,
}

impl FloorRootTracker {
    pub fn new(delta: Exponent) -> Self {
        FloorRootTracker { delta, x: 0, y: 0 }
    }

    /// ⌊x^δ⌋; calls must use nondecreasing x.
    pub fn at(&mut self, x: u64) -> u64 {
        assert!(x >= self.x, "floor root tracker moved backwards");
        if x == self.x {
            return self.y;
        }
        self.x = x;
        // y^den <= x^num < (y+1)^den
        let (num, den) = (self.delta.num, self.delta.den);
        let rhs = (x as u128).checked_pow(num);
        loop {
            let next = self.y + 1;
            let le = match (rhs, (next as u128).checked_pow(den)) {
                (Some(r), Some(l)) => l <= r,
                _ => BigUint::from(next).pow(den) <= BigUint::from(x).pow(num),
            };
            if le {
                self.y = next;
            } else {
                break;
            }
        }
        self.y
    }
}

/// Interval length H as a function of x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalSpec {
    /// H = x.
    Hx,
    /// H = ⌊x^δ⌋.
    XDelta(Exponent),
    /// H = 2⌊x^δ⌋.
    TwoXDelta(Exponent),
    /// H = 2⌊x^δ⌋ + 1.
    TwoXDelta1(Exponent),
    /// H = c.
    Const(u64),
}

impl IntervalSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            IntervalSpec::Const(0) => Err(Error::param("H", "constant interval length must be >= 1")),
            IntervalSpec::XDelta(d) | IntervalSpec::TwoXDelta(d) | IntervalSpec::TwoXDelta1(d) => {
                Exponent::new(d.num, d.den).map(|_| ())
            }
            _ => Ok(()),
        }
    }

    pub fn delta(&self) -> Option<Exponent> {
        match self {
            IntervalSpec::XDelta(d) | IntervalSpec::TwoXDelta(d) | IntervalSpec::TwoXDelta1(d) => Some(*d),
            _ => None,
        }
    }

    /// H(x), computed from scratch.
    pub fn length(&self, x: u64) -> u64 {
        match self {
            IntervalSpec::Hx => x,
            IntervalSpec::XDelta(d) => floor_pow_root(x, *d),
            IntervalSpec::TwoXDelta(d) => 2 * floor_pow_root(x, *d),
            IntervalSpec::TwoXDelta1(d) => 2 * floor_pow_root(x, *d) + 1,
            IntervalSpec::Const(c) => *c,
        }
    }

    /// Streaming evaluator of H(x) for nondecreasing x.
    pub fn lengths(&self) -> IntervalLengths {
        IntervalLengths {
            spec: *self,
            tracker: self.delta().map(FloorRootTracker::new),
        }
    }

    pub fn label(&self) -> String {
        match self {
            IntervalSpec::Hx => "hx".into(),
            IntervalSpec::XDelta(d) => format!("xdelta({d})"),
            IntervalSpec::TwoXDelta(d) => format!("2xdelta({d})"),
            IntervalSpec::TwoXDelta1(d) => format!("2xdelta1({d})"),
            IntervalSpec::Const(c) => format!("const({c})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntervalLengths {
    spec: IntervalSpec,
    tracker: Option<FloorRootTracker>,
}

impl IntervalLengths {
    pub fn at(&mut self, x: u64) -> u64 {
        match (&self.spec, self.tracker.as_mut()) {
            (IntervalSpec::XDelta(_), Some(t)) => t.at(x),
            (IntervalSpec::TwoXDelta(_), Some(t)) => 2 * t.at(x),
            (IntervalSpec::TwoXDelta1(_), Some(t)) => 2 * t.at(x) + 1,
            (spec, _) => spec.length(x),
        }
    }
}

/// R_0(x) = Σ_{n≤x} φ(n)/n − x/ζ(2), given the prefix sum up to x.
pub fn remainder_r0(x: u64, prefix: TwoFloat) -> TwoFloat {
    prefix - TwoFloat::from(x) * inv_zeta2()
}

/// Discrete first and second moments of R_0 over x = 1..=X.
#[derive(Debug, Clone, Copy)]
pub struct R0Moments {
    pub average: f64,
    pub mean_square: f64,
}

pub fn discrete_moments_r0(x_max: u64) -> Result<R0Moments> {
    if x_max == 0 {
        return Err(Error::EmptyRange("X must be at least 1"));
    }
    let mut cursor = PrefixCursor::new(x_max, DEFAULT_BLOCK_SIZE)?;
    let mut acc = StatAccumulator::new();
    for x in 1..=x_max {
        acc.push(remainder_r0(x, cursor.prefix_at(x)));
    }
    Ok(R0Moments {
        average: acc.mean(),
        mean_square: acc.mean_sq(),
    })
}

/// (1/X) Σ_{x≤X} R_0(x); tends to 1/(2ζ(2)).
pub fn discrete_average_r0(x_max: u64) -> Result<f64> {
    discrete_moments_r0(x_max).map(|m| m.average)
}

/// (1/X) Σ_{x≤X} R_0(x)²; tends to 1/(12ζ(2)) + 1/(6ζ(2)²).
pub fn discrete_meansq_r0(x_max: u64) -> Result<f64> {
    discrete_moments_r0(x_max).map(|m| m.mean_square)
}

/// Running estimates (1/X) Σ_{x≤X} R_0(x;H)² reported at each requested checkpoint.
///
/// R_0(x;H) is the increment over the half-open interval (x, x+H]. Two sieve
/// cursors walk x and x+H(x) in lockstep so no prefix array is kept.
pub fn interval_variance_checkpoints(
    x_max: u64,
    spec: IntervalSpec,
    checkpoints: &[u64],
) -> Result<Vec<(u64, f64)>> {
    if x_max == 0 {
        return Err(Error::EmptyRange("X must be at least 1"));
    }
    spec.validate()?;
    let front_limit = x_max + spec.length(x_max);
    let mut back = PrefixCursor::new(x_max, DEFAULT_BLOCK_SIZE)?;
    let mut front = PrefixCursor::new(front_limit, DEFAULT_BLOCK_SIZE)?;
    let mut lengths = spec.lengths();
    let c = inv_zeta2();

    let mut marks: Vec<u64> = checkpoints.iter().copied().filter(|&c| c >= 1 && c <= x_max).collect();
    marks.sort_unstable();
    marks.dedup();
    let mut marks = marks.into_iter().peekable();

    let mut acc = StatAccumulator::new();
    let mut out = Vec::new();
    for x in 1..=x_max {
        let h = lengths.at(x);
        let lo = back.prefix_at(x);
        let hi = front.prefix_at(x + h);
        let r = (hi - lo) - TwoFloat::from(h) * c;
        acc.push(r);
        if marks.peek() == Some(&x) {
            marks.next();
            out.push((x, acc.mean_sq()));
        }
    }
    Ok(out)
}

/// (1/X) Σ_{x≤X} R_0(x;H)².
pub fn interval_variance(x_max: u64, spec: IntervalSpec) -> Result<f64> {
    let v = interval_variance_checkpoints(x_max, spec, &[x_max])?;
    Ok(v[0].1)
}

/// Independent specs evaluated in parallel.
pub fn interval_variances(x_max: u64, specs: &[IntervalSpec]) -> Result<Vec<f64>> {
    specs
        .par_iter()
        .map(|&s| interval_variance(x_max, s))
        .collect()
}

/// Geometric checkpoints (ratio 1.25) from `start` up to and including `x_max`.
pub fn geometric_checkpoints(start: u64, x_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut c = start.clamp(1, x_max.max(1));
    while c < x_max {
        out.push(c);
        let next = (c as f64 * 1.25).ceil() as u64;
        c = next.max(c + 1);
    }
    out.push(x_max);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mobius_table;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn r0_hand_values() {
        let c = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        let r1 = f64::from(remainder_r0(1, TwoFloat::from(1.0)));
        let r2 = f64::from(remainder_r0(2, TwoFloat::from(1.5)));
        let r4 = f64::from(remainder_r0(4, TwoFloat::new_div(8.0, 3.0)));
        assert!(close(r1, 1.0 - c, 1e-15) && close(r1, 0.392073, 1e-6));
        assert!(close(r2, 0.284146, 1e-6));
        assert!(close(r4, 8.0 / 3.0 - 4.0 * c, 1e-15) && close(r4, 0.234958, 1e-6));
    }

    #[test]
    fn small_moments() {
        let m1 = discrete_moments_r0(1).unwrap();
        assert!(close(m1.average, 0.392073, 1e-6));
        assert!(close(m1.mean_square, 0.153721, 1e-6));
        let m2 = discrete_moments_r0(2).unwrap();
        assert!(close(m2.average, 0.338109, 1e-6));
        assert!(close(m2.mean_square, 0.117230, 1e-6));
        assert!(discrete_average_r0(0).is_err());
    }

    #[test]
    fn remainder_matches_mobius_fractional_series_exactly() {
        // For n > x, {x/n} = x/n, so the tail collapses to x·(1/ζ(2) − Σ_{n≤x} μ(n)/n²).
        let limit = 500u64;
        let mu = mobius_table(limit as usize);
        let mut cursor = PrefixCursor::new(limit, 64).unwrap();
        for x in 1..=limit {
            let r0 = f64::from(remainder_r0(x, cursor.prefix_at(x)));
            let mut head = 0.0f64;
            let mut sq = 0.0f64;
            for n in 1..=x {
                let m = mu[n as usize] as f64;
                head += m / n as f64 * ((x % n) as f64 / n as f64);
                sq += m / (n * n) as f64;
            }
            let series = -head - x as f64 * (6.0 / std::f64::consts::PI.powi(2) - sq);
            assert!(close(r0, series, 1e-10), "x = {x}: {r0} vs {series}");
        }
    }

    #[test]
    fn truncated_mobius_series_converges() {
        // Partial sums of −Σ μ(n)/n {x/n} at cutoff 10^6·x.
        let xs = 1..=10u64;
        let mu = mobius_table(10_000_000);
        let mut cursor = PrefixCursor::new(10, 4).unwrap();
        for x in xs {
            let r0 = f64::from(remainder_r0(x, cursor.prefix_at(x)));
            let cutoff = 1_000_000 * x;
            let mut s = 0.0f64;
            for n in 1..=cutoff {
                let m = mu[n as usize];
                if m != 0 {
                    s += m as f64 / n as f64 * ((x % n) as f64 / n as f64);
                }
            }
            assert!(close(r0, -s, 1e-3), "x = {x}: {r0} vs {}", -s);
        }
    }

    #[test]
    fn floor_roots_are_exact() {
        let half = Exponent::new(1, 2).unwrap();
        let five_sixths = Exponent::new(5, 6).unwrap();
        let mut t = FloorRootTracker::new(five_sixths);
        for x in 1..20_000u64 {
            assert_eq!(floor_pow_root(x, half), crate::arith::isqrt(x));
            let y = t.at(x);
            assert_eq!(y, floor_pow_root(x, five_sixths));
            let xp = (x as u128).pow(5);
            assert!((y as u128).pow(6) <= xp && ((y + 1) as u128).pow(6) > xp);
        }
        // perfect powers sit exactly on the boundary
        assert_eq!(floor_pow_root(64, five_sixths), 32);
        assert_eq!(floor_pow_root(63, five_sixths), 31);
        assert_eq!(floor_pow_root(10_000_000, Exponent::new(1, 1).unwrap()), 10_000_000);
    }

    #[test]
    fn exponent_validation() {
        assert!(Exponent::new(0, 3).is_err());
        assert!(Exponent::new(4, 3).is_err());
        assert_eq!("2/4".parse::<Exponent>().unwrap(), Exponent::new(1, 2).unwrap());
        assert!("x/2".parse::<Exponent>().is_err());
        assert!(IntervalSpec::Const(0).validate().is_err());
        assert!(IntervalSpec::XDelta(Exponent { num: 3, den: 2 }).validate().is_err());
    }

    #[test]
    fn interval_lengths_are_at_least_one() {
        let d = Exponent::new(1, 4).unwrap();
        for spec in [
            IntervalSpec::Hx,
            IntervalSpec::XDelta(d),
            IntervalSpec::TwoXDelta(d),
            IntervalSpec::TwoXDelta1(d),
            IntervalSpec::Const(3),
        ] {
            let mut l = spec.lengths();
            for x in 1..5000 {
                let h = l.at(x);
                assert!(h >= 1);
                assert_eq!(h, spec.length(x));
            }
        }
    }

    #[test]
    fn interval_variance_matches_direct_prefix_array() {
        let x_max = 3000u64;
        let d = Exponent::new(1, 2).unwrap();
        let specs = [IntervalSpec::Hx, IntervalSpec::XDelta(d), IntervalSpec::TwoXDelta1(d)];
        let prefix: Vec<f64> = std::iter::once(0.0)
            .chain(super::super::sieve::totient_ratio_sieve(2 * x_max + 200, 100).unwrap().scan(0.0, |s, t| {
                *s += t.to_f64();
                Some(*s)
            }))
            .collect();
        let c = 6.0 / std::f64::consts::PI.powi(2);
        let got = interval_variances(x_max, &specs).unwrap();
        for (spec, v) in specs.iter().zip(got) {
            let direct: f64 = (1..=x_max)
                .map(|x| {
                    let h = spec.length(x);
                    let r = prefix[(x + h) as usize] - prefix[x as usize] - h as f64 * c;
                    r * r
                })
                .sum::<f64>()
                / x_max as f64;
            assert!(close(v, direct, 1e-9), "{}: {v} vs {direct}", spec.label());
        }
    }

    #[test]
    fn checkpoints_are_geometric() {
        let c = geometric_checkpoints(1000, 5000);
        assert_eq!(c[0], 1000);
        assert_eq!(c[1], 1250);
        assert_eq!(*c.last().unwrap(), 5000);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(geometric_checkpoints(1000, 10), vec![10]);
    }
}
