//! Factorization over F_q: squarefree decomposition, distinct-degree
//! factorization, then Cantor–Zassenhaus equal-degree splitting.

use num::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use crate::error::{Error, Result};

/// Seed of the equal-degree splitting randomizer; fixed so factorizations are reproducible.
pub const SPLIT_SEED: u64 = 0x5eed_f00d;

/// Monic irreducible factors with multiplicities, sorted, plus the leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Product of the prime powers (the monicized input).
    pub fn monic_product(&self, one: Poly) -> Poly {
        self.factors.iter().fold(one, |acc, (p, e)| &acc * &p.pow(*e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// (−1)^k on squarefree inputs with k prime factors, else 0.
    pub fn mobius(&self) -> i32 {
        if self.is_squarefree() {
            if self.factors.len() % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }
}

pub fn factorize(f: &Poly) -> Result<Factorization> {
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    factorize_with(f, &mut rng)
}

pub fn factorize_with<R: Rng>(f: &Poly, rng: &mut R) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&f.monic())? {
        for (block, d) in distinct_degree(&sqf)? {
            for p in equal_degree(&block, d, rng)? {
                factors.push((p, mult));
            }
        }
    }
    factors.sort();
    // the same prime can surface from different squarefree parts only in char p; merge
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        match merged.last_mut() {
            Some((last, m)) if *last == p => *m += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization { unit, factors: merged })
}

/// g with g(T)^p = f(T) for f whose exponents are all multiples of p.
fn pth_root(f: &Poly) -> Poly {
    let p = f.q() as usize;
    let coeffs = f.coeffs().iter().step_by(p).copied().collect();
    Poly::new(f.ctx(), coeffs)
}

/// Monic f as ∏ g_i^{i}, g_i squarefree and pairwise coprime; returns (g, i) for g ≠ 1.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let p = f.q() as u32;
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root(f))? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&df)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&pth_root(&c))? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree f into (product of all degree-d factors, d).
pub fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let ctx = f.ctx();
    let q = BigUint::from(f.q());
    let x = Poly::t(ctx);
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest)?;
        let g = (&h - &x).gcd(&rest)?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, deg));
    }
    Ok(out)
}

/// Splits a monic squarefree product of degree-d irreducibles into its factors.
pub fn equal_degree<R: Rng>(f: &Poly, d: usize, rng: &mut R) -> Result<Vec<Poly>> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let ctx = f.ctx();
    let q = f.q();
    loop {
        let a = Poly::new(ctx, (0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q == 2 {
            // trace map a + a^2 + ... + a^{2^{d-1}}
            let mut term = a.rem(f)?;
            let mut acc = term.clone();
            for _ in 1..d {
                term = term.mul_mod(&term, f)?;
                acc = &acc + &term;
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            &a.pow_mod(&e, f)? - &Poly::one(ctx)
        };
        let g = b.gcd(f)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&f.div_exact(&g)?, d, rng)?);
            return Ok(out);
        }
    }
}

/// Irreducibility via the distinct-degree split.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(n) => n,
    };
    let fm = f.monic();
    if !fm.gcd(&fm.derivative())?.is_one() {
        return Ok(false);
    }
    let dd = distinct_degree(&fm)?;
    Ok(dd.len() == 1 && dd[0].1 == n)
}
