//! Segmented totient sieve streaming φ(n)/n for n = 1..=limit.
//!
//! Each segment `[lo, hi]` starts from `phi[n] = n`, `rest[n] = n` and strips
//! every base prime `p ≤ √hi`; whatever survives in `rest` is a single prime
//! factor larger than `√hi`. Memory is one segment plus the base primes.

use num::{BigInt, BigRational};
use twofloat::TwoFloat;

use crate::arith::{isqrt, primes_up_to};
use crate::error::{Error, Result};

pub const DEFAULT_BLOCK_SIZE: usize = 1 << 16;

/// φ(n)/n as the pair (n, φ(n)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TotientRatio {
    pub n: u64,
    pub phi: u64,
}

impl TotientRatio {
    /// Reduced exact value.
    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.phi), BigInt::from(self.n))
    }

    pub fn to_f64(self) -> f64 {
        self.phi as f64 / self.n as f64
    }

    /// φ(n)/n to double-double precision (both operands are exact doubles below 2^53).
    pub fn to_twofloat(self) -> TwoFloat {
        TwoFloat::new_div(self.phi as f64, self.n as f64)
    }
}

/// Fills `phi` with φ(n) for n in `lo..lo + phi.len()`.
///
/// `primes` must contain every prime up to `√(lo + len - 1)`. Pure function of
/// its arguments, so disjoint segments can be filled concurrently.
pub fn fill_segment(lo: u64, primes: &[u64], phi: &mut [u64], rest: &mut [u64]) {
    debug_assert_eq!(phi.len(), rest.len());
    debug_assert!(lo >= 1);
    let len = phi.len() as u64;
    if len == 0 {
        return;
    }
    let hi = lo + len - 1;
    for (i, (p, r)) in phi.iter_mut().zip(rest.iter_mut()).enumerate() {
        *p = lo + i as u64;
        *r = lo + i as u64;
    }
    for &p in primes {
        if p * p > hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut k = first;
        while k <= hi {
            let i = (k - lo) as usize;
            phi[i] -= phi[i] / p;
            let mut r = rest[i] / p;
            while r % p == 0 {
                r /= p;
            }
            rest[i] = r;
            k += p;
        }
    }
    for (p, &r) in phi.iter_mut().zip(rest.iter()) {
        if r > 1 {
            *p -= *p / r;
        }
    }
}

/// Streams [`TotientRatio`] for n = 1, 2, ..., limit in order.
#[derive(Debug, Clone)]
pub struct TotientStream {
    limit: u64,
    block_size: usize,
    primes: Vec<u64>,
    seg_lo: u64,
    phi: Vec<u64>,
    rest: Vec<u64>,
    pos: usize,
}

impl TotientStream {
    pub fn new(limit: u64, block_size: usize) -> Result<Self> {
        if limit == 0 {
            return Err(Error::EmptyRange("totient sieve limit must be at least 1"));
        }
        if block_size == 0 {
            return Err(Error::param("block_size", "must be positive"));
        }
        Ok(TotientStream {
            limit,
            block_size,
            primes: primes_up_to(isqrt(limit)),
            seg_lo: 1,
            phi: Vec::with_capacity(block_size),
            rest: Vec::with_capacity(block_size),
            pos: 0,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    fn next_segment(&mut self) -> bool {
        self.seg_lo += self.phi.len() as u64;
        if self.seg_lo > self.limit {
            return false;
        }
        let len = (self.limit - self.seg_lo + 1).min(self.block_size as u64) as usize;
        self.phi.resize(len, 0);
        self.rest.resize(len, 0);
        fill_segment(self.seg_lo, &self.primes, &mut self.phi, &mut self.rest);
        self.pos = 0;
        true
    }
}

impl Iterator for TotientStream {
    type Item = TotientRatio;

    fn next(&mut self) -> Option<TotientRatio> {
        if self.pos >= self.phi.len() && !self.next_segment() {
            return None;
        }
        let out = TotientRatio {
            n: self.seg_lo + self.pos as u64,
            phi: self.phi[self.pos],
        };
        self.pos += 1;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let emitted = self.seg_lo - 1 + self.pos as u64;
        let left = (self.limit - emitted) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for TotientStream {}

/// Starts a totient stream over `1..=limit`.
pub fn totient_ratio_sieve(limit: u64, block_size: usize) -> Result<TotientStream> {
    TotientStream::new(limit, block_size)
}

/// A forward-only cursor holding the running sum Σ_{k≤n} φ(k)/k.
#[derive(Debug, Clone)]
pub struct PrefixCursor {
    stream: TotientStream,
    pos: u64,
    sum: TwoFloat,
}

impl PrefixCursor {
    pub fn new(limit: u64, block_size: usize) -> Result<Self> {
        Ok(PrefixCursor {
            stream: TotientStream::new(limit, block_size)?,
            pos: 0,
            sum: TwoFloat::from(0.0),
        })
    }

    /// Advances to `n` and returns the prefix sum there. `n` must not move backwards
    /// and must not exceed the stream limit.
    pub fn prefix_at(&mut self, n: u64) -> TwoFloat {
        assert!(n >= self.pos, "prefix cursor moved backwards ({} -> {n})", self.pos);
        while self.pos < n {
            let t = self
                .stream
                .next()
                .expect("prefix cursor advanced past the sieve limit");
            self.sum += t.to_twofloat();
            self.pos += 1;
        }
        self.sum
    }

    pub fn position(&self) -> u64 {
        self.pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{One, Signed, ToPrimitive, Zero};

    fn naive_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| crate::arith::gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn small_known_values() {
        let v: Vec<_> = totient_ratio_sieve(30, 7).unwrap().collect();
        assert_eq!(v.len(), 30);
        assert_eq!(v[0].to_rational(), BigRational::one());
        assert_eq!(
            v[11].to_rational(),
            BigRational::new(1.into(), 3.into())
        );
        assert_eq!(
            v[29].to_rational(),
            BigRational::new(4.into(), 15.into())
        );
    }

    #[test]
    fn zero_limit_is_an_error() {
        assert!(matches!(
            totient_ratio_sieve(0, 16),
            Err(Error::EmptyRange(_))
        ));
    }

    #[test]
    fn matches_naive_totient_across_block_sizes() {
        let expected: Vec<u64> = (1..=600).map(naive_phi).collect();
        for block in [1, 2, 3, 10, 64, 1000] {
            let got: Vec<u64> = totient_ratio_sieve(600, block).unwrap().map(|t| t.phi).collect();
            assert_eq!(got, expected, "block size {block}");
        }
    }

    #[test]
    fn prefix_matches_exact_rational_sum() {
        let limit = 10_000;
        let mut exact = BigRational::zero();
        let mut cursor = PrefixCursor::new(limit, 777).unwrap();
        for t in totient_ratio_sieve(limit, 4096).unwrap() {
            exact += t.to_rational();
            if t.n % 1000 == 0 || t.n == limit {
                let dd = cursor.prefix_at(t.n);
                let approx = BigRational::from_float(dd.hi()).unwrap()
                    + BigRational::from_float(dd.lo()).unwrap();
                let err = (approx - &exact).abs().to_f64().unwrap();
                assert!(err < 1e-20, "n = {}: error {err:e}", t.n);
            }
        }
    }

    #[test]
    fn size_hint_tracks_progress() {
        let mut s = totient_ratio_sieve(10, 3).unwrap();
        assert_eq!(s.len(), 10);
        s.next();
        s.next();
        s.next();
        s.next();
        assert_eq!(s.len(), 6);
    }
}
