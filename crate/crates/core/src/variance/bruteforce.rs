//! Exact Var(N_β) by enumerating intervals.
//!
//! N_β(A;h) = Σ_{deg(f−A)≤h} β(f) only depends on the coefficients of A in
//! degrees h+1..n−1, so the q^n choices of A collapse into q^{n−h−1} classes of
//! equal size q^{h+1}. With integer class sums S = Σ φ(f) this gives
//! Var = (K·ΣS² − (ΣS)²) / (K²·q^{2n}) for K classes.

use num::{BigInt, BigRational, Zero};

use super::check_nh;
use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_monic, interval, FieldCtx, TotientTable};

/// Largest q^n accepted for enumeration.
pub const BRUTEFORCE_MAX_SIZE: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForce {
    pub mean: BigRational,
    pub variance: BigRational,
}

fn check_size(ctx: FieldCtx, n: usize) -> Result<()> {
    let size = (ctx.q() as u128).saturating_pow(n as u32);
    if size > BRUTEFORCE_MAX_SIZE as u128 {
        return Err(Error::bound("q^n", size, BRUTEFORCE_MAX_SIZE as u128));
    }
    Ok(())
}

/// Σ_{f∈I} φ(f) for each interval class, indexed by the coefficients of degree h+1..n−1.
pub fn interval_class_sums(table: &TotientTable, n: usize, h: usize) -> Result<Vec<u64>> {
    check_nh(n, h)?;
    if n > table.max_deg() {
        return Err(Error::param("n", "totient table too small"));
    }
    let q = table.ctx().q();
    let width = q.pow(h as u32 + 1);
    let mut sums = vec![0u64; q.pow((n - h - 1) as u32) as usize];
    for (idx, &phi) in table.phis(n).iter().enumerate() {
        sums[idx / width as usize] += phi;
    }
    Ok(sums)
}

fn moments_from_sums(sums: impl Iterator<Item = u64>, weight: u64, q: u64, n: usize) -> BruteForce {
    let (mut k, mut s1, mut s2) = (BigInt::zero(), BigInt::zero(), BigInt::zero());
    for s in sums {
        let s = BigInt::from(s);
        k += weight;
        s2 += &s * &s * weight;
        s1 += s * weight;
    }
    let qn = BigInt::from(q).pow(n as u32);
    let mean = BigRational::new(s1.clone(), &k * &qn);
    let variance = BigRational::new(&k * s2 - &s1 * &s1, &k * &k * &qn * &qn);
    BruteForce { mean, variance }
}

/// Exact mean and variance of N_β(A;h) over A ∈ M_n, via interval classes.
pub fn bruteforce_variance(table: &TotientTable, n: usize, h: usize) -> Result<BruteForce> {
    check_size(table.ctx(), n)?;
    let sums = interval_class_sums(table, n, h)?;
    Ok(moments_from_sums(sums.into_iter(), 1, table.ctx().q(), n))
}

/// The same statistic with every A ∈ M_n enumerated and its interval walked
/// explicitly; only meant as a check on the class collapse.
pub fn bruteforce_variance_full(table: &TotientTable, n: usize, h: usize) -> Result<BruteForce> {
    check_nh(n, h)?;
    let ctx = table.ctx();
    check_size(ctx, n)?;
    let mut sums = Vec::new();
    for a in enumerate_monic(ctx, n)? {
        let s = interval(&a, h)?.map(|f| table.phi(n, f.monic_index())).sum();
        sums.push(s);
    }
    Ok(moments_from_sums(sums.into_iter(), 1, ctx.q(), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::beta;
    use num::One;

    fn table(q: u64, n: usize) -> TotientTable {
        TotientTable::new(FieldCtx::new(q).unwrap(), n).unwrap()
    }

    #[test]
    fn q3_n2_mean_is_two() {
        let t = table(3, 2);
        let b = bruteforce_variance(&t, 2, 0).unwrap();
        assert_eq!(b.mean, BigRational::from_integer(2.into()));
        // hand enumeration over the 9 monic quadratics
        let ctx = t.ctx();
        let mut classes = vec![BigRational::zero(); 3];
        for f in enumerate_monic(ctx, 2).unwrap() {
            classes[f.coeff(1) as usize] += beta(&f).unwrap();
        }
        let mean: BigRational = classes.iter().sum::<BigRational>() / BigRational::from_integer(3.into());
        let var: BigRational = classes.iter().map(|c| (c - &mean) * (c - &mean)).sum::<BigRational>()
            / BigRational::from_integer(3.into());
        assert_eq!(b.variance, var);
    }

    #[test]
    fn class_collapse_equals_full_enumeration() {
        for (q, n, h) in [(3, 4, 0), (3, 4, 1), (5, 3, 0), (2, 6, 2)] {
            let t = table(q, n);
            assert_eq!(bruteforce_variance(&t, n, h).unwrap(), bruteforce_variance_full(&t, n, h).unwrap());
        }
    }

    #[test]
    fn mean_is_q_to_the_h_plus_one_times_one_minus_inverse_q() {
        for (q, n, h) in [(3, 4, 0), (3, 5, 1), (5, 4, 0), (7, 4, 0), (3, 6, 1)] {
            let t = table(q, n);
            let b = bruteforce_variance(&t, n, h).unwrap();
            let q_r = BigRational::from_integer(q.into());
            let want = q_r.pow(h as i32 + 1) * (BigRational::one() - q_r.recip());
            assert_eq!(b.mean, want);
        }
    }

    #[test]
    fn constant_family_has_zero_variance() {
        let b = moments_from_sums([5u64].into_iter(), 9, 3, 2);
        assert!(b.variance.is_zero());
        let b = moments_from_sums([4u64, 4, 4].into_iter(), 1, 3, 2);
        assert!(b.variance.is_zero());
    }

    #[test]
    fn rejects_bad_ranges() {
        let t = table(3, 4);
        assert!(bruteforce_variance(&t, 4, 3).is_err());
        assert!(bruteforce_variance(&t, 5, 0).is_err());
    }
}
