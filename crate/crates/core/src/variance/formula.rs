//! Var(N_β) as a sum over even characters mod T^{n−h}.
//!
//! Var(N_β) = Φ^{−2} Σ_{χ≠χ_0 even} |Σ_{m≤n} β(T^{n−m}) M(m; βχ)|², with
//! Φ = q^{n−h−1} the number of even characters. Each inner sum is taken from
//! the L-data (λ_j, S_l) of χ; the batch transform of the β weights gives an
//! independent evaluation of the same numbers.

use super::check_nh;
use crate::charlfun::{build_unit_group, even_census, even_l_data, weighted_sums_batch, BetaWeights};
use crate::error::Result;
use crate::ffpoly::FieldCtx;

/// The character sum split by primitivity, plus diagnostics of the L-data.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterSplit {
    pub q: u64,
    pub n: usize,
    pub h: usize,
    /// Σ |S(χ)|² over primitive even χ.
    pub primitive_sum: f64,
    /// Σ |S(χ)|² over non-primitive, non-principal even χ.
    pub nonprimitive_sum: f64,
    /// Σ |S(χ)|² with S(χ) from the β weights directly.
    pub direct_sum: f64,
    /// Largest |S_closed(χ) − S_direct(χ)| over characters.
    pub max_path_gap: f64,
    /// (#even, #primitive even, #non-principal even).
    pub census: (u64, u64, u64),
    pub max_rh_violation: f64,
    pub max_rh_deviation_primitive: f64,
    /// Mean of |λ_N|²·|S_{h+2}|² over primitive χ (N = n − h − 2).
    pub leading_term_average: f64,
}

impl CharacterSplit {
    pub fn total(&self) -> f64 {
        self.primitive_sum + self.nonprimitive_sum
    }

    /// Number of even characters, q^{n−h−1}.
    pub fn even_count(&self) -> f64 {
        self.census.0 as f64
    }

    pub fn variance(&self) -> f64 {
        self.total() / self.even_count().powi(2)
    }

    pub fn variance_direct(&self) -> f64 {
        self.direct_sum / self.even_count().powi(2)
    }

    /// The same sum normalized by the primitive count q^{n−h−2}(q−1) instead.
    pub fn variance_primitive_normalization(&self) -> f64 {
        self.total() / (self.census.1 as f64).powi(2)
    }

    pub fn nonprimitive_share(&self) -> f64 {
        self.nonprimitive_sum / self.total()
    }

    pub fn primitive_share(&self) -> f64 {
        self.primitive_sum / self.total()
    }
}

/// Evaluates the character formula, reusing precomputed β weights (degree ≥ n).
pub fn formula_variance_with(beta: &BetaWeights, n: usize, h: usize) -> Result<CharacterSplit> {
    check_nh(n, h)?;
    let ctx = beta.table().ctx();
    let q = ctx.q();
    let tbl = build_unit_group(ctx, n - h)?;
    let direct = weighted_sums_batch(&tbl, beta, n)?;
    let mut split = CharacterSplit {
        q,
        n,
        h,
        primitive_sum: 0.0,
        nonprimitive_sum: 0.0,
        direct_sum: 0.0,
        max_path_gap: 0.0,
        census: even_census(&tbl),
        max_rh_violation: 0.0,
        max_rh_deviation_primitive: 0.0,
        leading_term_average: 0.0,
    };
    let q_minus_1 = tbl.orders()[0];
    let big_n = n - h - 2;
    for (chi, data) in even_l_data(&tbl)? {
        let s = data.weighted_sum_closed(n);
        let s_direct = direct[(chi.index / q_minus_1) as usize];
        split.max_path_gap = split.max_path_gap.max((s - s_direct).norm());
        split.direct_sum += s_direct.norm_sqr();
        split.max_rh_violation = split.max_rh_violation.max(data.max_rh_violation());
        if chi.is_primitive {
            split.primitive_sum += s.norm_sqr();
            split.max_rh_deviation_primitive = split.max_rh_deviation_primitive.max(data.max_rh_deviation());
            let s_l = data.s_series(h + 3);
            split.leading_term_average += data.lambda[big_n].norm_sqr() * s_l[h + 2].norm_sqr();
        } else {
            split.nonprimitive_sum += s.norm_sqr();
        }
    }
    split.leading_term_average /= split.census.1 as f64;
    Ok(split)
}

/// Var(N_β) from the character formula.
pub fn formula_variance(ctx: FieldCtx, n: usize, h: usize) -> Result<f64> {
    check_nh(n, h)?;
    let beta = BetaWeights::new(ctx, n)?;
    Ok(formula_variance_with(&beta, n, h)?.variance())
}
