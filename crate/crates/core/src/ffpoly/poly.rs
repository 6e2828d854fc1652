use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::BigUint;

use super::field::FieldCtx;
use crate::error::{Error, Result};

/// A polynomial over F_q, coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Reduces the coefficients mod q and trims.
    pub fn new(ctx: FieldCtx, coeffs: Vec<u64>) -> Self {
        let q = ctx.q();
        let coeffs = coeffs.into_iter().map(|c| c % q).collect();
        Self::from_reduced(ctx, coeffs)
    }

    pub fn from_signed(ctx: FieldCtx, coeffs: &[i64]) -> Self {
        Self::from_reduced(ctx, coeffs.iter().map(|&c| ctx.reduce(c)).collect())
    }

    fn from_reduced(ctx: FieldCtx, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { ctx, coeffs }
    }

    pub fn zero(ctx: FieldCtx) -> Self {
        Poly { ctx, coeffs: Vec::new() }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: FieldCtx, c: u64) -> Self {
        Self::new(ctx, vec![c])
    }

    /// T^k.
    pub fn monomial(ctx: FieldCtx, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Poly { ctx, coeffs }
    }

    /// T.
    pub fn t(ctx: FieldCtx) -> Self {
        Self::monomial(ctx, 1)
    }

    /// The monic polynomial of degree n whose lower coefficients are the base-q
    /// digits of `index` (c_0 least significant).
    pub fn monic_from_index(ctx: FieldCtx, n: usize, mut index: u64) -> Self {
        let q = ctx.q();
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push(index % q);
            index /= q;
        }
        coeffs.push(1);
        Poly { ctx, coeffs }
    }

    /// Inverse of [`Poly::monic_from_index`] (ignores the leading coefficient).
    pub fn monic_index(&self) -> u64 {
        let q = self.ctx.q();
        let n = self.coeffs.len().saturating_sub(1);
        self.coeffs[..n].iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn q(&self) -> u64 {
        self.ctx.q()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of T^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(0)
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.ctx;
        Self::from_reduced(f, self.coeffs.iter().map(|&a| f.mul(a, c % f.q())).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.ctx.inv(self.leading()))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.ctx;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.ctx;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(c, k as u64 % f.q()))
            .collect();
        Self::from_reduced(f, coeffs)
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch(self.q(), other.q()));
        }
        Ok(())
    }

    /// Quotient and remainder with deg(rem) < deg(b).
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(b)?;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = self.ctx;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(b.leading());
        let mut quot = vec![0; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = f.mul(rem[i], inv);
            if c == 0 {
                continue;
            }
            quot[i - db] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i - db + j] = f.sub(rem[i - db + j], f.mul(c, bj));
            }
        }
        rem.truncate(db);
        Ok((Self::from_reduced(f, quot), Self::from_reduced(f, rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        self.divrem(b).map(|(_, r)| r)
    }

    /// Exact quotient; errors if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Result<Poly> {
        let (quo, rem) = self.divrem(b)?;
        if !rem.is_zero() {
            return Err(Error::Domain(format!("{b} does not divide {self}")));
        }
        Ok(quo)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        (self * other).rem(modulus)
    }

    /// self^e mod modulus, square-and-multiply over the bits of `e`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(self.ctx).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus)?;
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// ||f|| = q^{deg f}.
    pub fn norm(&self) -> Result<BigUint> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        Ok(BigUint::from(self.q()).pow(d as u32))
    }

    /// f*(T) = T^{deg f} f(1/T); requires f(0) ≠ 0.
    pub fn reversal(&self) -> Result<Poly> {
        if self.constant_term() == 0 {
            return Err(Error::Domain("reversal needs a nonzero constant term".into()));
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(Self::from_reduced(self.ctx, c))
    }

    /// Parses `c0+c1*T+...+T^n` (terms in any order, repeated degrees add up).
    pub fn parse(ctx: FieldCtx, s: &str) -> Result<Poly> {
        let bad = |why: &str| Error::Parse(format!("`{s}`: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty polynomial"));
        }
        let mut coeffs: Vec<u64> = Vec::new();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (c, k) = match term.find('T') {
                None => (term, 0usize),
                Some(pos) => {
                    let head = &term[..pos];
                    let coef = match head {
                        "" => "1",
                        h => h.strip_suffix('*').ok_or_else(|| bad("expected `*` before T"))?,
                    };
                    let exp = match &term[pos + 1..] {
                        "" => 1,
                        e => e
                            .strip_prefix('^')
                            .ok_or_else(|| bad("expected `^` after T"))?
                            .parse()
                            .map_err(|_| bad("bad exponent"))?,
                    };
                    (coef, exp)
                }
            };
            let c: u64 = c.parse().map_err(|_| bad("bad coefficient"))?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = ctx.add(coeffs[k], c % ctx.q());
        }
        Ok(Self::from_reduced(ctx, coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("T")?,
                (1, c) => write!(f, "{c}*T")?,
                (k, 1) => write!(f, "T^{k}")?,
                (k, c) => write!(f, "{c}*T^{k}")?,
            }
        }
        Ok(())
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ctx
            .q()
            .cmp(&other.ctx.q())
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn assert_same(a: &Poly, b: &Poly) {
    assert_eq!(a.q(), b.q(), "polynomials over different fields");
}

impl Add for &Poly {
    type Output = Poly;

    /// Panics on mismatched fields.
    fn add(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        let f = self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_reduced(f, (0..n).map(|k| f.add(self.coeff(k), rhs.coeff(k))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        let f = self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_reduced(f, (0..n).map(|k| f.sub(self.coeff(k), rhs.coeff(k))).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.ctx);
        }
        let q = self.q();
        // accumulate unreduced; coefficients are below 2^31 so a few products fit in u128
        let mut acc = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] += (a * b) as u128;
            }
        }
        Poly::from_reduced(self.ctx, acc.into_iter().map(|c| (c % q as u128) as u64).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = self.ctx;
        Poly::from_reduced(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> FieldCtx {
        FieldCtx::new(q).unwrap()
    }

    fn p(q: u64, s: &str) -> Poly {
        Poly::parse(f(q), s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p(3, "2+T^2").gcd(&p(3, "2+T")).unwrap(), p(3, "2+T"));
        let (quo, rem) = p(5, "T^3").divrem(&p(5, "T")).unwrap();
        assert_eq!((quo, rem.is_zero()), (p(5, "T^2"), true));
        assert_eq!(&p(3, "1+T") * &p(3, "2+T"), p(3, "2+T^2"));
        assert!(matches!(p(3, "T").divrem(&Poly::zero(f(3))), Err(Error::DivisionByZero)));
        assert!(matches!(p(3, "T").divrem(&p(5, "T")), Err(Error::FieldMismatch(3, 5))));
    }

    #[test]
    fn norms_and_reversal() {
        assert_eq!(p(11, "7").norm().unwrap(), BigUint::from(1u32));
        assert_eq!(p(3, "T^3").norm().unwrap(), BigUint::from(27u32));
        assert_eq!(p(5, "T^2+T").norm().unwrap(), BigUint::from(25u32));
        assert!(matches!(Poly::zero(f(3)).norm(), Err(Error::ZeroPolynomial)));
        assert_eq!(p(5, "2+T").reversal().unwrap(), p(5, "1+2*T"));
        assert_eq!(p(5, "3").reversal().unwrap(), p(5, "3"));
        assert_eq!(p(3, "2+T+T^2").reversal().unwrap(), p(3, "1+T+2*T^2"));
        assert!(p(3, "T+T^2").reversal().is_err());
    }

    #[test]
    fn text_format_round_trips() {
        let g = p(7, "3+0*T+5*T^2+T^4");
        assert_eq!(g.to_string(), "3+5*T^2+T^4");
        assert_eq!(p(7, &g.to_string()), g);
        assert_eq!(p(7, "T + 1 + T").to_string(), "1+2*T");
        assert_eq!(Poly::zero(f(7)).to_string(), "0");
        assert_eq!(p(7, "0"), Poly::zero(f(7)));
        for bad in ["", "T^", "2T", "1++T", "x"] {
            assert!(Poly::parse(f(7), bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn monic_indexing() {
        let ctx = f(3);
        let listed: Vec<String> = (0..3).map(|i| Poly::monic_from_index(ctx, 1, i).to_string()).collect();
        assert_eq!(listed, ["T", "1+T", "2+T"]);
        for i in 0..81 {
            assert_eq!(Poly::monic_from_index(ctx, 4, i).monic_index(), i);
        }
        assert_eq!(Poly::monic_from_index(ctx, 0, 0), Poly::one(ctx));
    }

    fn arb_poly(q: u64, max_len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(0..q, 0..max_len).prop_map(move |c| Poly::new(FieldCtx::new(q).unwrap(), c))
    }

    proptest! {
        #[test]
        fn division_identity(a in arb_poly(7, 9), b in arb_poly(7, 6)) {
            prop_assume!(!b.is_zero());
            let (quo, rem) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&quo * &b) + &rem, a);
            prop_assert!(rem.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn ring_axioms(a in arb_poly(5, 6), b in arb_poly(5, 6), c in arb_poly(5, 6)) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!(&a + &(-&a), Poly::zero(a.ctx()));
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(3, 7), b in arb_poly(3, 7)) {
            let g = a.gcd(&b).unwrap();
            if !g.is_zero() {
                prop_assert!(g.is_monic());
                prop_assert!(a.rem(&g).unwrap().is_zero());
                prop_assert!(b.rem(&g).unwrap().is_zero());
            }
        }

        #[test]
        fn reversal_is_an_involution(a in arb_poly(5, 7)) {
            prop_assume!(a.constant_term() != 0);
            prop_assert_eq!(a.reversal().unwrap().reversal().unwrap(), a);
        }
    }
}
