//! Σ_u w(u)·χ(u) for every even χ at once.
//!
//! Even characters ignore the F_q^× axis, so the weights are first summed over
//! constants onto the 1-unit grid; a separable DFT over the remaining axes
//! then gives all q^{m−1} sums in O(q^{m−1}·Σ ord_i) operations.

use num::complex::Complex64;

use super::unit_group::UnitGroupTable;

/// Sums `weights` (indexed by residue mod T^m; non-units ignored) against every
/// even character. Entry v of the result belongs to
/// [`even_index`](super::even_index)`(tbl, v)`.
pub fn even_character_sums(tbl: &UnitGroupTable, weights: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(weights.len() as u64, tbl.residue_count(), "one weight per residue");
    let q_minus_1 = tbl.orders()[0];
    let mut grid = vec![Complex64::new(0.0, 0.0); tbl.even_order() as usize];
    for (r, w) in weights.iter().enumerate() {
        if let Some(x) = tbl.dlog_packed(r as u64) {
            grid[(x / q_minus_1) as usize] += w;
        }
    }
    let mut stride = 1usize;
    let mut scratch = Vec::new();
    for &ord in &tbl.orders()[1..] {
        let ord = ord as usize;
        let roots: Vec<Complex64> = (0..ord)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / ord as f64))
            .collect();
        let block = stride * ord;
        for base in (0..grid.len()).step_by(block) {
            for off in 0..stride {
                scratch.clear();
                scratch.extend((0..ord).map(|x| grid[base + off + x * stride]));
                for e in 0..ord {
                    grid[base + off + e * stride] =
                        scratch.iter().enumerate().map(|(x, v)| v * roots[e * x % ord]).sum();
                }
            }
        }
        stride = block;
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::super::{char_value_residue, enumerate_even_characters, unit_group::build_unit_group};
    use super::*;
    use crate::ffpoly::FieldCtx;
    use rand::{Rng, SeedableRng};

    #[test]
    fn matches_character_by_character_sums() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (q, m) in [(3, 4), (5, 3), (2, 6), (7, 2)] {
            let t = build_unit_group(FieldCtx::new(q).unwrap(), m).unwrap();
            let w: Vec<Complex64> = (0..t.residue_count())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let fast = even_character_sums(&t, &w);
            for (v, chi) in enumerate_even_characters(&t).enumerate() {
                let slow: Complex64 = w
                    .iter()
                    .enumerate()
                    .map(|(r, x)| x * char_value_residue(&t, &chi, r as u64))
                    .sum();
                assert!((fast[v] - slow).norm() < 1e-10, "q={q} m={m} v={v}");
            }
        }
    }
}
