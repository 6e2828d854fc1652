//! The polynomial totient φ(f) = #(F_q[T]/(f))^× and β(f) = φ(f)/||f||.

use num::{BigInt, BigRational, BigUint, One, Zero};

use super::factor::factorize;
use super::field::FieldCtx;
use super::poly::Poly;
use crate::error::{Error, Result};

/// φ(f) = ||f|| ∏_{P|f} (1 − 1/||P||).
pub fn totient(f: &Poly) -> Result<BigUint> {
    let fac = factorize(f)?;
    let q = BigUint::from(f.q());
    let mut acc = BigUint::one();
    for (p, e) in &fac.factors {
        let d = p.degree().expect("irreducible factors are nonconstant") as u32;
        let np = q.pow(d);
        acc *= np.pow(e - 1) * (&np - 1u32);
    }
    Ok(acc)
}

/// β(f) = φ(f)/||f||, reduced.
pub fn beta(f: &Poly) -> Result<BigRational> {
    let phi = totient(f)?;
    let norm = f.norm()?;
    Ok(BigRational::new(BigInt::from(phi), BigInt::from(norm)))
}

/// Largest degree and field size accepted by [`totient_divisor_sum_check`].
pub const DIVISOR_CHECK_MAX_DEG: usize = 8;
pub const DIVISOR_CHECK_MAX_Q: u64 = 7;

/// Checks ||f|| = Σ_{g|f monic} φ(g) and φ(f) = Σ_{g|f monic} μ(g)·||f/g|| by
/// listing the monic divisors of f.
pub fn totient_divisor_sum_check(f: &Poly) -> Result<bool> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg > DIVISOR_CHECK_MAX_DEG {
        return Err(Error::bound("deg f", deg as u128, DIVISOR_CHECK_MAX_DEG as u128));
    }
    if f.q() > DIVISOR_CHECK_MAX_Q {
        return Err(Error::bound("q", f.q() as u128, DIVISOR_CHECK_MAX_Q as u128));
    }
    let ctx = f.ctx();
    let fac = factorize(f)?;
    let mut divisors = vec![Poly::one(ctx)];
    for (p, e) in &fac.factors {
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for g in &divisors {
            let mut acc = g.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = &acc * p;
                next.push(acc.clone());
            }
        }
        divisors = next;
    }
    let monic = f.monic();
    let norm = monic.norm()?;
    let mut phi_sum = BigUint::zero();
    let mut mobius_sum = BigInt::zero();
    for g in &divisors {
        phi_sum += totient(g)?;
        let mu = factorize(g)?.mobius();
        if mu != 0 {
            let cofactor = monic.div_exact(g)?;
            mobius_sum += BigInt::from(mu) * BigInt::from(cofactor.norm()?);
        }
    }
    Ok(phi_sum == norm && mobius_sum == BigInt::from(totient(f)?))
}

/// φ for every monic polynomial of degree ≤ n, by sieving with the irreducibles.
///
/// `phi[d][i]` belongs to `Poly::monic_from_index(ctx, d, i)`. A monic
/// polynomial is irreducible iff no irreducible of smaller degree was sieved
/// onto it; each irreducible P then scales φ of all its multiples P·g by
/// (1 − 1/||P||).
#[derive(Debug, Clone)]
pub struct TotientTable {
    ctx: FieldCtx,
    max_deg: usize,
    phi: Vec<Vec<u64>>,
    irreducible: Vec<Vec<bool>>,
}

/// Upper bound on q^n for [`TotientTable::new`].
pub const TOTIENT_TABLE_MAX_SIZE: u64 = 50_000_000;

impl TotientTable {
    pub fn new(ctx: FieldCtx, max_deg: usize) -> Result<Self> {
        let q = ctx.q();
        q.checked_pow(max_deg as u32)
            .filter(|&s| s <= TOTIENT_TABLE_MAX_SIZE)
            .ok_or(Error::bound(
                "q^n",
                (q as u128).saturating_pow(max_deg as u32),
                TOTIENT_TABLE_MAX_SIZE as u128,
            ))?;
        let mut phi: Vec<Vec<u64>> = (0..=max_deg).map(|d| vec![q.pow(d as u32); q.pow(d as u32) as usize]).collect();
        let mut composite: Vec<Vec<bool>> = (0..=max_deg).map(|d| vec![false; q.pow(d as u32) as usize]).collect();
        let mut irreducible: Vec<Vec<bool>> = (0..=max_deg).map(|d| vec![false; q.pow(d as u32) as usize]).collect();
        for d in 1..=max_deg {
            let qd = q.pow(d as u32);
            for i in 0..qd {
                if composite[d][i as usize] {
                    continue;
                }
                irreducible[d][i as usize] = true;
                let p = Poly::monic_from_index(ctx, d, i);
                for gd in 0..=max_deg - d {
                    for j in 0..q.pow(gd as u32) {
                        let g = Poly::monic_from_index(ctx, gd, j);
                        let k = (&p * &g).monic_index() as usize;
                        let slot = &mut phi[d + gd][k];
                        *slot = *slot / qd * (qd - 1);
                        if gd > 0 {
                            composite[d + gd][k] = true;
                        }
                    }
                }
            }
        }
        Ok(TotientTable {
            ctx,
            max_deg,
            phi,
            irreducible,
        })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn phi(&self, deg: usize, index: u64) -> u64 {
        self.phi[deg][index as usize]
    }

    /// φ values of all monic polynomials of degree `deg`, by index.
    pub fn phis(&self, deg: usize) -> &[u64] {
        &self.phi[deg]
    }

    pub fn beta(&self, deg: usize, index: u64) -> BigRational {
        BigRational::new(
            BigInt::from(self.phi(deg, index)),
            BigInt::from(self.ctx.q().pow(deg as u32)),
        )
    }

    pub fn beta_f64(&self, deg: usize, index: u64) -> f64 {
        self.phi(deg, index) as f64 / self.ctx.q().pow(deg as u32) as f64
    }

    pub fn is_irreducible(&self, deg: usize, index: u64) -> bool {
        self.irreducible[deg][index as usize]
    }
}

pub const CSV_HEADER: &str = "q,n,poly,phi,beta_num,beta_den";

/// One CSV row `q,n,poly,phi,beta_num,beta_den` (β reduced).
pub fn csv_row(f: &Poly) -> Result<String> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let phi = totient(f)?;
    let b = beta(f)?;
    Ok(format!("{},{},{},{},{},{}", f.q(), n, f, phi, b.numer(), b.denom()))
}
