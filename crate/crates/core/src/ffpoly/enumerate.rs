use std::ops::Range;

use super::field::FieldCtx;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Monic polynomials of a fixed degree, by index (c_0 is the fastest digit).
#[derive(Debug, Clone)]
pub struct MonicIter {
    ctx: FieldCtx,
    n: usize,
    range: Range<u64>,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        self.range.next().map(|i| Poly::monic_from_index(self.ctx, self.n, i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.range.size_hint()
    }
}

impl ExactSizeIterator for MonicIter {}

fn count(ctx: FieldCtx, n: usize) -> Result<u64> {
    ctx.q()
        .checked_pow(n as u32)
        .ok_or(Error::bound("q^n", u128::MAX, u64::MAX as u128))
}

/// All q^n monic polynomials of degree n.
pub fn enumerate_monic(ctx: FieldCtx, n: usize) -> Result<MonicIter> {
    let total = count(ctx, n)?;
    Ok(MonicIter { ctx, n, range: 0..total })
}

/// A contiguous slice of [`enumerate_monic`], for splitting work.
pub fn enumerate_monic_range(ctx: FieldCtx, n: usize, range: Range<u64>) -> Result<MonicIter> {
    let total = count(ctx, n)?;
    if range.end > total {
        return Err(Error::param("range", format!("end {} exceeds q^n = {total}", range.end)));
    }
    Ok(MonicIter { ctx, n, range })
}

fn check_interval(a: &Poly, h: usize) -> Result<usize> {
    let n = a.degree().ok_or(Error::ZeroPolynomial)?;
    if !a.is_monic() {
        return Err(Error::Domain("interval centre must be monic".into()));
    }
    if n < 2 || h > n - 2 {
        return Err(Error::param("h", format!("need 0 <= h <= n - 2, got h = {h}, n = {n}")));
    }
    Ok(n)
}

/// I(A;h) = {A + g : deg g ≤ h}, q^{h+1} polynomials.
pub fn interval(a: &Poly, h: usize) -> Result<impl Iterator<Item = Poly>> {
    check_interval(a, h)?;
    let ctx = a.ctx();
    let q = ctx.q();
    let size = q.pow(h as u32 + 1);
    let a = a.clone();
    Ok((0..size).map(move |mut idx| {
        let mut c = a.coeffs().to_vec();
        for slot in c.iter_mut().take(h + 1) {
            *slot = ctx.add(*slot, idx % q);
            idx /= q;
        }
        Poly::new(ctx, c)
    }))
}

/// Coefficients of A in degrees h+1..n−1 as a base-q index; equal keys give equal intervals.
pub fn interval_key(a: &Poly, h: usize) -> Result<u64> {
    let n = check_interval(a, h)?;
    let q = a.q();
    Ok((h + 1..n).rev().fold(0, |acc, k| acc * q + a.coeff(k)))
}
