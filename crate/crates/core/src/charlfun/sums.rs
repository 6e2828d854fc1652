//! Direct evaluation of M(m; βχ) = Σ_{f∈M_m} β(f)χ(f) and of the weighted sum
//! Σ_{m≤n} β(T^{n−m}) M(m; βχ), with closed-form counterparts from [`LData`].

use num::complex::Complex64;

use super::character::{char_value_residue, Character};
use super::lfun::l_polynomial;
use super::transform::even_character_sums;
use super::unit_group::UnitGroupTable;
use crate::error::{Error, Result};
use crate::ffpoly::{FieldCtx, TotientTable};

/// β(f) = φ(f)/|f| for every monic f up to a fixed degree.
#[derive(Debug, Clone)]
pub struct BetaWeights {
    table: TotientTable,
}

impl BetaWeights {
    pub fn new(ctx: FieldCtx, max_deg: usize) -> Result<Self> {
        Ok(BetaWeights {
            table: TotientTable::new(ctx, max_deg)?,
        })
    }

    pub fn from_table(table: TotientTable) -> Self {
        BetaWeights { table }
    }

    pub fn table(&self) -> &TotientTable {
        &self.table
    }

    pub fn max_deg(&self) -> usize {
        self.table.max_deg()
    }

    /// β of the monic polynomial of degree `deg` with the given index.
    pub fn get(&self, deg: usize, index: u64) -> f64 {
        self.table.beta_f64(deg, index)
    }

    /// β(T^k): 1 for k = 0, else 1 − 1/q.
    pub fn of_t_power(&self, k: usize) -> f64 {
        if k == 0 {
            1.0
        } else {
            1.0 - 1.0 / self.table.ctx().q() as f64
        }
    }
}

/// Absolute difference below which two sums count as equal regardless of size;
/// some weighted sums vanish identically and only rounding noise is left.
pub const ZERO_FLOOR: f64 = 1e-12;

/// |a − b| / max(|a|, |b|), or 0 when both are within [`ZERO_FLOOR`] of each other.
pub fn relative_gap(a: Complex64, b: Complex64) -> f64 {
    let diff = (a - b).norm();
    if diff <= ZERO_FLOOR {
        return 0.0;
    }
    diff / a.norm().max(b.norm())
}

/// Residue mod T^m of the monic polynomial of degree `deg` with index `idx`.
fn monic_residue(q: u64, m: usize, deg: usize, idx: u64) -> u64 {
    if deg < m {
        idx + q.pow(deg as u32)
    } else {
        idx % q.pow(m as u32)
    }
}

fn check_degree(beta: &BetaWeights, deg: usize) -> Result<()> {
    if deg > beta.max_deg() {
        return Err(Error::param("m_deg", format!("β table only reaches degree {}", beta.max_deg())));
    }
    Ok(())
}

/// Σ_{f∈M_{m_deg}} β(f)χ(f), by enumeration.
pub fn char_sum_m(tbl: &UnitGroupTable, beta: &BetaWeights, chi: &Character, m_deg: usize) -> Result<Complex64> {
    check_degree(beta, m_deg)?;
    let q = tbl.q();
    let m = tbl.modulus_degree();
    Ok((0..q.pow(m_deg as u32))
        .map(|i| beta.get(m_deg, i) * char_value_residue(tbl, chi, monic_residue(q, m, m_deg, i)))
        .sum())
}

/// Σ_{m=0}^n β(T^{n−m}) M(m; βχ), by enumeration.
pub fn weighted_sum_s(tbl: &UnitGroupTable, beta: &BetaWeights, chi: &Character, n: usize) -> Result<Complex64> {
    check_degree(beta, n)?;
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..=n {
        total += beta.of_t_power(n - m) * char_sum_m(tbl, beta, chi, m)?;
    }
    Ok(total)
}

/// The same weighted sum from the λ_j and S_l of χ.
pub fn weighted_sum_s_closed(tbl: &UnitGroupTable, chi: &Character, n: usize) -> Result<Complex64> {
    Ok(l_polynomial(tbl, chi)?.weighted_sum_closed(n))
}

/// The weighted sum for every even character at once (indexed by 1-unit grid position).
///
/// Builds W(u) = Σ_m β(T^{n−m}) Σ_{f∈M_m, f≡u} β(f) and transforms it.
pub fn weighted_sums_batch(tbl: &UnitGroupTable, beta: &BetaWeights, n: usize) -> Result<Vec<Complex64>> {
    check_degree(beta, n)?;
    let q = tbl.q();
    let m = tbl.modulus_degree();
    let mut w = vec![Complex64::new(0.0, 0.0); tbl.residue_count() as usize];
    for deg in 0..=n {
        let bt = beta.of_t_power(n - deg);
        for i in 0..q.pow(deg as u32) {
            w[monic_residue(q, m, deg, i) as usize] += bt * beta.get(deg, i);
        }
    }
    Ok(even_character_sums(tbl, &w))
}

#[cfg(test)]
mod tests {
    use super::super::{build_unit_group, enumerate_even_characters};
    use super::*;
    use crate::ffpoly::{beta, enumerate_monic};
    use num::ToPrimitive;

    #[test]
    fn relative_gap_floor() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(relative_gap(one, one), 0.0);
        assert_eq!(relative_gap(Complex64::new(1e-17, 0.0), Complex64::new(-1e-17, 0.0)), 0.0);
        assert!((relative_gap(one, one * 1.001) - 0.001 / 1.001).abs() < 1e-12);
    }

    #[test]
    fn degree_zero_sum_is_one() {
        let ctx = FieldCtx::new(3).unwrap();
        let t = build_unit_group(ctx, 3).unwrap();
        let b = BetaWeights::new(ctx, 3).unwrap();
        for chi in enumerate_even_characters(&t) {
            assert!((char_sum_m(&t, &b, &chi, 0).unwrap() - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn principal_degree_one_sum() {
        // f = T + a, a ≠ 0: each is irreducible, β = 2/3; T itself is excluded
        let ctx = FieldCtx::new(3).unwrap();
        let t = build_unit_group(ctx, 2).unwrap();
        let b = BetaWeights::new(ctx, 2).unwrap();
        let chi0 = Character::from_index(&t, 0);
        assert!((char_sum_m(&t, &b, &chi0, 1).unwrap() - 4.0 / 3.0).norm() < 1e-14);
    }

    #[test]
    fn direct_sum_against_polynomial_enumeration() {
        let ctx = FieldCtx::new(3).unwrap();
        let t = build_unit_group(ctx, 4).unwrap();
        let b = BetaWeights::new(ctx, 5).unwrap();
        for chi in enumerate_even_characters(&t).step_by(7) {
            for deg in 0..=5 {
                let oracle: Complex64 = enumerate_monic(ctx, deg)
                    .unwrap()
                    .map(|f| beta(&f).unwrap().to_f64().unwrap() * super::super::char_value(&t, &chi, &f))
                    .sum();
                assert!((char_sum_m(&t, &b, &chi, deg).unwrap() - oracle).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_forms_match_direct_sums() {
        for (q, m, n) in [(3, 4, 6), (3, 5, 5), (5, 3, 4), (2, 6, 7)] {
            let ctx = FieldCtx::new(q).unwrap();
            let t = build_unit_group(ctx, m).unwrap();
            let b = BetaWeights::new(ctx, n).unwrap();
            for chi in enumerate_even_characters(&t).filter(|c| !c.is_principal) {
                let d = l_polynomial(&t, &chi).unwrap();
                for k in 0..=n {
                    let direct = char_sum_m(&t, &b, &chi, k).unwrap();
                    assert!((d.char_sum_closed(k) - direct).norm() < 1e-9, "q={q} m={m} k={k}");
                }
                let direct = weighted_sum_s(&t, &b, &chi, n).unwrap();
                assert!((d.weighted_sum_closed(n) - direct).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn batch_weighted_sums_match_direct() {
        let ctx = FieldCtx::new(5).unwrap();
        let t = build_unit_group(ctx, 3).unwrap();
        let b = BetaWeights::new(ctx, 5).unwrap();
        let batch = weighted_sums_batch(&t, &b, 5).unwrap();
        for (v, chi) in enumerate_even_characters(&t).enumerate() {
            assert!((batch[v] - weighted_sum_s(&t, &b, &chi, 5).unwrap()).norm() < 1e-10);
        }
    }
}
