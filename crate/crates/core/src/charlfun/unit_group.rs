//! The unit group (F_q[T]/T^m)^× with an explicit basis and a full discrete-log table.
//!
//! The group splits as F_q^× × V with V = {v ≡ 1 mod T}. For prime q = p the
//! 1-units have the basis {1 + T^k : 1 ≤ k < m, p ∤ k}, where 1 + T^k has order
//! p^s with s minimal such that k·p^s ≥ m. The basis claim is not trusted:
//! building the table enumerates every exponent vector, and a repeated
//! residue (or a missed one) is reported as an error.

use crate::arith::{lcm, strides};
use crate::error::{Error, Result};
use crate::ffpoly::{FieldCtx, Poly};

/// Largest admissible group order (q−1)·q^{m−1}.
pub const UNIT_GROUP_MAX_ORDER: u64 = 10_000_000;

const NOT_A_UNIT: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct UnitGroupTable {
    ctx: FieldCtx,
    m: usize,
    /// Residues of the generators: a primitive root, then 1 + T^k.
    generators: Vec<Poly>,
    /// Orders of the generators, axis 0 being F_q^×.
    orders: Vec<u64>,
    strides: Vec<u64>,
    /// Residue index → packed exponent vector (axis 0 fastest).
    dlog: Vec<u32>,
    /// Packed exponent vector → residue index.
    elements: Vec<u32>,
}

/// Residue index of f mod T^m: base-q digits of c_0..c_{m−1}.
pub fn residue_index(f: &Poly, m: usize) -> u64 {
    let q = f.q();
    (0..m).rev().fold(0, |acc, k| acc * q + f.coeff(k))
}

fn digits(mut idx: u64, q: u64, m: usize) -> Vec<u64> {
    let mut d = Vec::with_capacity(m);
    for _ in 0..m {
        d.push(idx % q);
        idx /= q;
    }
    d
}

fn undigits(d: &[u64], q: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * q + c)
}

/// Product of two residues mod T^m, on digit vectors.
fn mul_trunc(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let m = a.len();
    let mut out = vec![0u64; m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().take(m - i).enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    out
}

impl UnitGroupTable {
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn q(&self) -> u64 {
        self.ctx.q()
    }

    /// Modulus degree m (the modulus is T^m).
    pub fn modulus_degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Order of the even quotient U/F_q^×, i.e. q^{m−1}.
    pub fn even_order(&self) -> u64 {
        self.orders[1..].iter().product()
    }

    /// Exponent of the group: lcm of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn strides(&self) -> &[u64] {
        &self.strides
    }

    /// Number of residues mod T^m (units and non-units).
    pub fn residue_count(&self) -> u64 {
        self.dlog.len() as u64
    }

    /// Packed discrete log of a residue index, `None` for non-units.
    pub fn dlog_packed(&self, residue: u64) -> Option<u64> {
        match self.dlog[residue as usize] {
            NOT_A_UNIT => None,
            x => Some(x as u64),
        }
    }

    /// Exponent vector of a packed discrete log.
    pub fn unpack(&self, mut packed: u64) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&o| {
                let e = packed % o;
                packed /= o;
                e
            })
            .collect()
    }

    /// Discrete log of f mod T^m, `None` when f(0) = 0.
    pub fn dlog(&self, f: &Poly) -> Option<Vec<u64>> {
        self.dlog_packed(residue_index(f, self.m)).map(|x| self.unpack(x))
    }

    /// The residue ∏ g_i^{e_i} for a packed exponent vector.
    pub fn element(&self, packed: u64) -> Poly {
        let d = digits(self.elements[packed as usize] as u64, self.q(), self.m);
        Poly::new(self.ctx, d)
    }
}

/// Builds the table for the modulus T^m, m ≥ 2.
pub fn build_unit_group(ctx: FieldCtx, m: usize) -> Result<UnitGroupTable> {
    if m < 2 {
        return Err(Error::param("m", "modulus degree must be at least 2"));
    }
    let q = ctx.q();
    let order = (q as u128 - 1) * (q as u128).saturating_pow(m as u32 - 1);
    if order > UNIT_GROUP_MAX_ORDER as u128 {
        return Err(Error::bound("unit group order", order, UNIT_GROUP_MAX_ORDER as u128));
    }
    let residues = q.pow(m as u32);

    let mut generators = vec![Poly::constant(ctx, ctx.primitive_root())];
    let mut orders = vec![q - 1];
    for k in 1..m {
        if k as u64 % q == 0 {
            continue;
        }
        let mut ord = 1u64;
        let mut reach = k as u64;
        while reach < m as u64 {
            reach *= q;
            ord *= q;
        }
        generators.push(&Poly::one(ctx) + &Poly::monomial(ctx, k));
        orders.push(ord);
    }
    if orders.iter().product::<u64>() as u128 != order {
        return Err(Error::NotABasis(format!("generator orders {orders:?} do not multiply to {order}")));
    }
    let strides = strides(&orders);
    let gen_digits: Vec<Vec<u64>> = generators
        .iter()
        .map(|g| (0..m).map(|k| g.coeff(k)).collect())
        .collect();

    let total = order as usize;
    let mut elements = vec![0u32; total];
    let mut dlog = vec![NOT_A_UNIT; residues as usize];
    elements[0] = 1;
    dlog[1] = 0;
    for j in 1..total {
        // peel the fastest nonzero axis: element(j) = element(j − stride_i)·g_i
        let axis = (0..orders.len())
            .find(|&i| (j as u64 / strides[i]) % orders[i] != 0)
            .expect("j > 0 has a nonzero digit");
        let prev = digits(elements[j - strides[axis] as usize] as u64, q, m);
        let r = undigits(&mul_trunc(&prev, &gen_digits[axis], q), q);
        if dlog[r as usize] != NOT_A_UNIT {
            return Err(Error::NotABasis(format!(
                "exponent vectors {} and {j} give the same residue",
                dlog[r as usize]
            )));
        }
        elements[j] = r as u32;
        dlog[r as usize] = j as u32;
    }
    Ok(UnitGroupTable {
        ctx,
        m,
        generators,
        orders,
        strides,
        dlog,
        elements,
    })
}
