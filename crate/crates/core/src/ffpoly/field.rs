use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// The prime field F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldCtx {
    q: u64,
}

pub const MAX_FIELD_SIZE: u64 = 1 << 31;

impl FieldCtx {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::param("q", format!("{q} is not prime")));
        }
        if q > MAX_FIELD_SIZE {
            return Err(Error::bound("q", q as u128, MAX_FIELD_SIZE as u128));
        }
        Ok(FieldCtx { q })
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.q)
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.q != 0, "inverse of zero in F_{}", self.q);
        pow_mod(a, self.q - 2, self.q)
    }

    /// Smallest generator of F_q^×.
    pub fn primitive_root(&self) -> u64 {
        if self.q == 2 {
            return 1;
        }
        let factors = crate::arith::distinct_prime_factors(self.q - 1);
        (2..self.q)
            .find(|&g| factors.iter().all(|&p| self.pow(g, (self.q - 1) / p) != 1))
            .expect("F_q^× is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        assert!(FieldCtx::new(4).is_err());
        assert!(FieldCtx::new(1).is_err());
        let f = FieldCtx::new(7).unwrap();
        assert_eq!(f.mul(f.inv(3), 3), 1);
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.primitive_root(), 3);
        assert_eq!(FieldCtx::new(2).unwrap().primitive_root(), 1);
        assert_eq!(FieldCtx::new(13).unwrap().primitive_root(), 2);
    }
}
