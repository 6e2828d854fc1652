//! Regression goldens: exact variances that both evaluation paths agree on.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use phivar_core::ffpoly::FieldCtx;
use phivar_core::variance::variance_report;

use crate::commands::DUAL_PATH_TOL;
use crate::AssertionFailed;

/// (q, n, h) triples recorded in the golden file.
pub const GOLDEN_GRID: [(u64, usize, usize); 4] = [(3, 4, 0), (3, 5, 0), (3, 5, 1), (5, 4, 0)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub q: u64,
    pub n: usize,
    pub h: usize,
    pub mean_num: String,
    pub mean_den: String,
    pub var_num: String,
    pub var_den: String,
    /// 12 significant digits, for reading only.
    pub var_approx: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFile {
    pub entries: Vec<GoldenEntry>,
}

impl GoldenFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("golden file serializes");
        s.push('\n');
        s
    }
}

/// Recomputes every golden, failing if the formula path disagrees anywhere.
///
/// `perturb` scales the formula-side value by (1 + perturb); it exists so the
/// refusal path can be exercised.
pub fn compute(perturb: f64) -> Result<GoldenFile> {
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for (q, n, h) in GOLDEN_GRID {
        let r = variance_report(FieldCtx::new(q)?, n, h)?;
        let exact = r.var_bruteforce_f64();
        let formula = r.var_formula * (1.0 + perturb);
        let gap = (formula - exact).abs() / exact;
        if gap >= DUAL_PATH_TOL || r.split.max_path_gap >= DUAL_PATH_TOL {
            failures.push(format!("(q,n,h)=({q},{n},{h}): formula gap {gap:e}"));
        }
        entries.push(GoldenEntry {
            q,
            n,
            h,
            mean_num: r.mean_bruteforce.numer().to_string(),
            mean_den: r.mean_bruteforce.denom().to_string(),
            var_num: r.var_bruteforce.numer().to_string(),
            var_den: r.var_bruteforce.denom().to_string(),
            var_approx: format!("{exact:.11e}"),
            provenance: "exact enumeration over interval classes; character-sum formula agrees within 1e-6 relative"
                .into(),
        });
    }
    if !failures.is_empty() {
        return Err(AssertionFailed(format!("refusing to record goldens: {}", failures.join("; "))).into());
    }
    Ok(GoldenFile { entries })
}

pub enum GoldenAction {
    Created,
    Updated,
    Verified,
}

/// Creates the file if absent, rewrites it with `update`, otherwise compares.
pub fn run(path: &Path, update: bool, perturb: f64) -> Result<GoldenAction> {
    let fresh = compute(perturb)?;
    if !path.exists() {
        std::fs::write(path, fresh.to_json()).with_context(|| format!("writing {}", path.display()))?;
        return Ok(GoldenAction::Created);
    }
    if update {
        std::fs::write(path, fresh.to_json()).with_context(|| format!("writing {}", path.display()))?;
        return Ok(GoldenAction::Updated);
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let stored: GoldenFile =
        serde_json::from_str(&text).map_err(|e| crate::ConfigError(format!("{}: {e}", path.display())))?;
    if stored != fresh {
        let diffs: Vec<String> = stored
            .entries
            .iter()
            .zip(&fresh.entries)
            .filter(|(a, b)| a != b)
            .map(|(a, _)| format!("({},{},{})", a.q, a.n, a.h))
            .collect();
        return Err(AssertionFailed(format!(
            "golden mismatch in {} (entries {})",
            path.display(),
            if diffs.is_empty() { "count".to_string() } else { diffs.join(", ") }
        ))
        .into());
    }
    Ok(GoldenAction::Verified)
}
