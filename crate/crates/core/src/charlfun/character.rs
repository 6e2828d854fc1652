//! Dirichlet characters modulo T^m.
//!
//! A character is an exponent vector e over the generator axes of a
//! [`UnitGroupTable`]: χ(g_i) = exp(2πi·e_i/ord_i).

use num::complex::Complex64;

use super::unit_group::{residue_index, UnitGroupTable};
use crate::ffpoly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    /// Packed exponent vector (axis 0 fastest), unique per character.
    pub index: u64,
    pub exponents: Vec<u64>,
    pub is_even: bool,
    pub is_primitive: bool,
    pub is_principal: bool,
    /// Degree of the conductor T^c (0 for the principal character).
    pub conductor: usize,
}

impl Character {
    /// Builds the character with the given packed index.
    pub fn from_index(tbl: &UnitGroupTable, index: u64) -> Character {
        assert!(index < tbl.order(), "character index {index} out of range");
        let exponents = tbl.unpack(index);
        let is_even = exponents[0] == 0;
        let is_principal = exponents.iter().all(|&e| e == 0);
        let conductor = conductor_degree(tbl, &exponents);
        Character {
            index,
            is_even,
            is_primitive: conductor == tbl.modulus_degree(),
            is_principal,
            conductor,
            exponents,
        }
    }

    /// Phase of χ(u) as an integer modulo the group exponent, for a packed log.
    pub fn phase_of_log(&self, tbl: &UnitGroupTable, packed_log: u64) -> u64 {
        let big = tbl.exponent();
        let mut rest = packed_log;
        let mut phase = 0u64;
        for (&e, &o) in self.exponents.iter().zip(tbl.orders()) {
            let x = rest % o;
            rest /= o;
            phase = (phase + (e * x % o) * (big / o)) % big;
        }
        phase
    }

    /// χ(f) as an exact phase; `None` when f(0) = 0.
    pub fn phase(&self, tbl: &UnitGroupTable, f: &Poly) -> Option<u64> {
        tbl.dlog_packed(residue_index(f, tbl.modulus_degree()))
            .map(|x| self.phase_of_log(tbl, x))
    }
}

fn root_of_unity(phase: u64, modulus: u64) -> Complex64 {
    if phase == 0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * phase as f64 / modulus as f64)
}

/// χ(f): a root of unity, or 0 when T | f.
pub fn char_value(tbl: &UnitGroupTable, chi: &Character, f: &Poly) -> Complex64 {
    match chi.phase(tbl, f) {
        Some(ph) => root_of_unity(ph, tbl.exponent()),
        None => Complex64::new(0.0, 0.0),
    }
}

/// χ on a residue index mod T^m (digits c_0..c_{m−1}).
pub fn char_value_residue(tbl: &UnitGroupTable, chi: &Character, residue: u64) -> Complex64 {
    match tbl.dlog_packed(residue) {
        Some(x) => root_of_unity(chi.phase_of_log(tbl, x), tbl.exponent()),
        None => Complex64::new(0.0, 0.0),
    }
}

/// Smallest c such that χ is trivial on {u ≡ 1 mod T^c}; 0 if χ is principal.
///
/// The subgroup {1 + T^c·g} is generated by the 1 + aT^k with k ≥ c, so it is
/// enough to test those.
fn conductor_degree(tbl: &UnitGroupTable, exponents: &[u64]) -> usize {
    let probe = Character {
        index: 0,
        exponents: exponents.to_vec(),
        is_even: false,
        is_primitive: false,
        is_principal: false,
        conductor: 0,
    };
    let ctx = tbl.ctx();
    let m = tbl.modulus_degree();
    let trivial_at = |k: usize| {
        (1..ctx.q()).all(|a| {
            let u = &Poly::one(ctx) + &Poly::monomial(ctx, k).scale(a);
            probe.phase(tbl, &u) == Some(0)
        })
    };
    let mut c = m;
    while c > 1 && trivial_at(c - 1) {
        c -= 1;
    }
    if c == 1 && exponents[0] == 0 {
        0
    } else {
        c
    }
}

/// All (q−1)·q^{m−1} characters, by packed index.
pub fn enumerate_characters(tbl: &UnitGroupTable) -> impl Iterator<Item = Character> + '_ {
    (0..tbl.order()).map(move |i| Character::from_index(tbl, i))
}

/// The q^{m−1} even characters, ordered by their exponents on the 1-unit axes.
pub fn enumerate_even_characters(tbl: &UnitGroupTable) -> impl Iterator<Item = Character> + '_ {
    (0..tbl.even_order()).map(move |v| Character::from_index(tbl, even_index(tbl, v)))
}

/// Packed character index of the even character at position `v` of the 1-unit grid.
pub fn even_index(tbl: &UnitGroupTable, v: u64) -> u64 {
    v * tbl.orders()[0]
}

/// (#even, #primitive even, #non-principal even).
pub fn even_census(tbl: &UnitGroupTable) -> (u64, u64, u64) {
    let mut counts = (0, 0, 0);
    for chi in enumerate_even_characters(tbl) {
        counts.0 += 1;
        counts.1 += chi.is_primitive as u64;
        counts.2 += !chi.is_principal as u64;
    }
    counts
}
