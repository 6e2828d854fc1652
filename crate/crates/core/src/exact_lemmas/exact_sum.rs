//! Exact Σ c_k / k² for many small k.
//!
//! Partial sums of μ(n)/n² have denominators of hundreds of thousands of digits,
//! and reducing every intermediate `BigRational` costs a big gcd per addition.
//! Here terms are combined by binary splitting over denominators whose prime
//! factorizations are tracked symbolically, and the single final fraction is
//! reduced prime by prime using a modular test instead of a gcd.

use num::{BigInt, BigRational, BigUint, One, Zero};

use crate::arith::{pow_mod, smallest_prime_factors};

type Factors = Vec<(u32, u32)>;

/// Σ c/k² over `(c, k)` pairs, exactly and in lowest terms. Every `k` must be ≥ 1.
pub fn sum_inverse_squares(terms: &[(i64, u64)]) -> BigRational {
    let mut terms: Vec<(i128, u64)> = terms
        .iter()
        .map(|&(c, k)| {
            assert!(k >= 1, "denominator base must be positive");
            (c as i128, k)
        })
        .collect();
    terms.sort_unstable_by_key(|t| t.1);
    let mut merged: Vec<(i128, u64)> = Vec::with_capacity(terms.len());
    for (c, k) in terms {
        match merged.last_mut() {
            Some(last) if last.1 == k => last.0 += c,
            _ => merged.push((c, k)),
        }
    }
    merged.retain(|t| t.0 != 0);
    if merged.is_empty() {
        return BigRational::zero();
    }

    let kmax = merged.last().map(|t| t.1).unwrap_or(1);
    let spf = smallest_prime_factors(kmax as usize);
    let factor = |mut k: u64| -> Factors {
        let mut out = Vec::new();
        while k > 1 {
            let p = spf[k as usize];
            let mut v = 0;
            while k % p as u64 == 0 {
                k /= p as u64;
                v += 1;
            }
            out.push((p, 2 * v));
        }
        out.sort_unstable();
        out
    };

    let leaves: Vec<(BigInt, Factors)> = merged.iter().map(|&(c, k)| (BigInt::from(c), factor(k))).collect();
    let (mut num, mut den) = split(&leaves);

    // p | num iff the terms carrying the full power of p cancel mod p.
    let mut max_exp = vec![0u32; kmax as usize + 1];
    for &(p, e) in &den {
        max_exp[p as usize] = e;
    }
    let mut residue = vec![0u64; kmax as usize + 1];
    for (&(c, k), (_, f)) in merged.iter().zip(&leaves) {
        for &(p, e) in f {
            if e != max_exp[p as usize] {
                continue;
            }
            let p64 = p as u64;
            let cofactor = k / p64.pow(e / 2) % p64;
            let inv = pow_mod(cofactor * cofactor % p64, p64 - 2, p64);
            let c_mod = c.rem_euclid(p64 as i128) as u64;
            residue[p as usize] = (residue[p as usize] + c_mod * inv % p64) % p64;
        }
    }
    for (p, e) in den.iter_mut() {
        if residue[*p as usize] != 0 {
            continue;
        }
        let p = BigInt::from(*p);
        while *e > 0 && (&num % &p).is_zero() {
            num /= &p;
            *e -= 1;
        }
    }
    let den = BigInt::from(prime_power_product(&den));
    BigRational::new_raw(num, den)
}

/// Returns (numerator, denominator factors) of the sum over `leaves`.
fn split(leaves: &[(BigInt, Factors)]) -> (BigInt, Factors) {
    if leaves.len() == 1 {
        return leaves[0].clone();
    }
    let mid = leaves.len() / 2;
    let ((nl, fl), (nr, fr)) = rayon::join(|| split(&leaves[..mid]), || split(&leaves[mid..]));
    let (joint, lift_l, lift_r) = merge_factors(&fl, &fr);
    let num = nl * BigInt::from(prime_power_product(&lift_l)) + nr * BigInt::from(prime_power_product(&lift_r));
    (num, joint)
}

/// lcm of two factored numbers, and the cofactors lifting each side to it.
fn merge_factors(a: &Factors, b: &Factors) -> (Factors, Factors, Factors) {
    let (mut i, mut j) = (0, 0);
    let (mut joint, mut lift_a, mut lift_b) = (Vec::new(), Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        let pa = a.get(i).map(|t| t.0).unwrap_or(u32::MAX);
        let pb = b.get(j).map(|t| t.0).unwrap_or(u32::MAX);
        if pa < pb {
            joint.push(a[i]);
            lift_b.push(a[i]);
            i += 1;
        } else if pb < pa {
            joint.push(b[j]);
            lift_a.push(b[j]);
            j += 1;
        } else {
            let (ea, eb) = (a[i].1, b[j].1);
            joint.push((pa, ea.max(eb)));
            if ea > eb {
                lift_b.push((pa, ea - eb));
            } else if eb > ea {
                lift_a.push((pa, eb - ea));
            }
            i += 1;
            j += 1;
        }
    }
    (joint, lift_a, lift_b)
}

fn prime_power_product(f: &[(u32, u32)]) -> BigUint {
    if f.len() <= 8 {
        let mut acc = BigUint::one();
        let mut word: u64 = 1;
        for &(p, e) in f {
            for _ in 0..e {
                match word.checked_mul(p as u64) {
                    Some(w) => word = w,
                    None => {
                        acc *= word;
                        word = p as u64;
                    }
                }
            }
        }
        return acc * word;
    }
    let mid = f.len() / 2;
    prime_power_product(&f[..mid]) * prime_power_product(&f[mid..])
}
