//! Small integer helpers shared by the sieves and the exact lemma checks.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let n = n as u128;
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r as u64
}

/// Primes up to and including `limit` (plain sieve of Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Möbius function for 0..=limit via a linear sieve; entry 0 is 0.
pub fn mobius_table(limit: usize) -> Vec<i8> {
    let mut mu = vec![0i8; limit + 1];
    if limit == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut is_composite = vec![false; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=limit {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            is_composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// Smallest prime factor of every 0..=limit (entries 0 and 1 are 0).
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] != 0 {
            continue;
        }
        let mut j = i;
        while j <= limit {
            if spf[j] == 0 {
                spf[j] = i as u32;
            }
            j += i;
        }
    }
    spf
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Modular exponentiation with 128-bit intermediates.
pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Distinct prime factors by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Mixed-radix strides for the given radices (first digit varies fastest).
pub fn strides(radices: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(radices.len());
    let mut s = 1;
    for &r in radices {
        out.push(s);
        s *= r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        let mu = mobius_table(12);
        assert_eq!(&mu[1..], &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn isqrt_boundaries() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "{n}");
        }
        assert_eq!(isqrt(u32::MAX as u64 * u32::MAX as u64), u32::MAX as u64);
    }

    #[test]
    fn primes_and_factors() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(distinct_prime_factors(360), vec![2, 3, 5]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(1));
        assert_eq!(pow_mod(3, 4, 7), 4);
        let spf = smallest_prime_factors(30);
        assert_eq!((spf[2], spf[9], spf[25], spf[29], spf[30]), (2, 3, 5, 29, 2));
    }
}
