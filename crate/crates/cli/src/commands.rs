//! One function per subcommand. Each returns its table plus the list of
//! embedded checks that failed; the caller writes the table either way.

use std::fmt::Display;
use std::str::FromStr;

use anyhow::Result;
use clap::{Args, ValueEnum};
use num::{BigRational, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer};

use phivar_core::arith::{gcd, mobius_table};
use phivar_core::charlfun::{
    build_unit_group, char_sum_m, even_l_data, l_polynomial, relative_gap, weighted_sum_s, BetaWeights,
    enumerate_even_characters,
};
use phivar_core::exact_lemmas::{
    closed_form_pair_sum, frac_pair_period_sum, gcd_double_limit, gcd_double_sum, mobius_square_limit,
    mobius_square_sum, series_assembly, series_limit, theorem_series_value, FracPairSpec, Parity, SeriesVariant,
};
use phivar_core::ffpoly::FieldCtx;
use phivar_core::int_sieve::{
    assumption_correlation_test, geometric_checkpoints, interval_variance_checkpoints, Exponent, IntervalSpec,
};
use phivar_core::variance::{asymptotic_sweep, variance_report, VarianceReport};

use crate::output::{Cell, Table};

/// Relative tolerance of every dual-path comparison.
pub const DUAL_PATH_TOL: f64 = 1e-6;

pub struct Outcome {
    pub table: Table,
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(table: Table) -> Self {
        Outcome {
            table,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

pub(crate) fn from_str<'de, D, T>(d: D) -> std::result::Result<T, D::Error>
where
    D: Deserializer<'de>,
    T: FromStr,
    T::Err: Display,
{
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

fn default_delta() -> Exponent {
    Exponent::new(1, 2).expect("1/2 is a valid exponent")
}

fn default_start() -> u64 {
    1000
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntVarianceArgs {
    /// Largest x.
    #[arg(long = "X")]
    #[serde(rename = "X")]
    pub x: u64,
    /// Interval length: hx, xdelta, 2xdelta or 2xdelta1.
    #[arg(long)]
    #[serde(deserialize_with = "from_str")]
    pub interval: SeriesVariant,
    #[arg(long, default_value = "1/2")]
    #[serde(deserialize_with = "from_str", default = "default_delta")]
    pub delta: Exponent,
    /// First geometric checkpoint.
    #[arg(long, default_value_t = 1000)]
    #[serde(default = "default_start")]
    pub start: u64,
}

pub fn int_variance(a: &IntVarianceArgs) -> Result<Outcome> {
    let spec = match a.interval {
        SeriesVariant::Hx => IntervalSpec::Hx,
        SeriesVariant::HxDelta => IntervalSpec::XDelta(a.delta),
        SeriesVariant::H2xDelta => IntervalSpec::TwoXDelta(a.delta),
        SeriesVariant::H2xDelta1 => IntervalSpec::TwoXDelta1(a.delta),
    };
    let marks = geometric_checkpoints(a.start, a.x);
    let mut t = Table::new(&["X_checkpoint", "variance_estimate"]);
    for (x, v) in interval_variance_checkpoints(a.x, spec, &marks)? {
        t.push(vec![x.into(), v.into()]);
    }
    Ok(Outcome::new(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaCheck {
    Sumymn,
    Sumneo,
    Summneo,
    Gcdsum,
    Series,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntLemmasArgs {
    #[arg(long, value_enum)]
    pub check: LemmaCheck,
    #[arg(long)]
    pub cutoff: u64,
}

fn ratio_cells(r: &BigRational) -> [Cell; 2] {
    [r.numer().into(), r.denom().into()]
}

pub fn int_lemmas(a: &IntLemmasArgs) -> Result<Outcome> {
    let c = a.cutoff;
    match a.check {
        LemmaCheck::Sumymn => {
            let mut out = Outcome::new(Table::new(&["m", "n", "a", "b", "branch", "closed_num", "closed_den", "ok"]));
            for m in 1..=c {
                for n in 1..=c {
                    for (ma, mb) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                        let spec = FracPairSpec::new(m, n, ma, mb)?;
                        let closed = closed_form_pair_sum(&spec)?;
                        let mut ok = true;
                        for x0 in [0, 1, 7, 29] {
                            ok &= frac_pair_period_sum(&spec, x0)? == closed;
                        }
                        out.check(ok, || format!("sumymn mismatch at m={m} n={n} a={ma} b={mb}"));
                        let [num, den] = ratio_cells(&closed);
                        out.table.push(vec![
                            m.into(),
                            n.into(),
                            (ma as u64).into(),
                            (mb as u64).into(),
                            spec.branch().into(),
                            num,
                            den,
                            ok.into(),
                        ]);
                    }
                }
            }
            Ok(out)
        }
        LemmaCheck::Sumneo => {
            let mut out = Outcome::new(Table::new(&["parity", "cutoff", "value", "limit", "abs_diff"]));
            let all = mobius_square_sum(Parity::All, c)?;
            let even = mobius_square_sum(Parity::Even, c)?;
            let odd = mobius_square_sum(Parity::Odd, c)?;
            out.check(&even + &odd == all, || "even + odd ≠ all".into());
            let half = mobius_square_sum(Parity::Odd, c / 2)?;
            let even_2h = mobius_square_sum(Parity::Even, 2 * (c / 2))?;
            out.check(even_2h == -half / BigRational::from_integer(4.into()), || {
                "even(2c) ≠ −odd(c)/4".into()
            });
            for (p, v) in [(Parity::All, all), (Parity::Even, even), (Parity::Odd, odd)] {
                let value = v.to_f64().unwrap_or(f64::NAN);
                let limit = mobius_square_limit(p);
                out.table
                    .push(vec![p.to_string().into(), c.into(), value.into(), limit.into(), (value - limit).abs().into()]);
            }
            Ok(out)
        }
        LemmaCheck::Summneo => {
            let mut out = Outcome::new(Table::new(&["parity_m", "parity_n", "cutoff", "value", "limit", "abs_diff"]));
            let mut pieces = BigRational::zero();
            for pm in [Parity::Odd, Parity::Even] {
                for pn in [Parity::Odd, Parity::Even] {
                    let v = gcd_double_sum(pm, pn, c)?;
                    pieces += &v;
                    let value = v.to_f64().unwrap_or(f64::NAN);
                    let limit = gcd_double_limit(pm, pn);
                    out.table.push(vec![
                        pm.to_string().into(),
                        pn.to_string().into(),
                        c.into(),
                        value.into(),
                        limit.into(),
                        (value - limit).abs().into(),
                    ]);
                }
            }
            out.check(pieces == gcd_double_sum(Parity::All, Parity::All, c)?, || {
                "parity pieces do not sum to the full gcd sum".into()
            });
            Ok(out)
        }
        LemmaCheck::Gcdsum => {
            let mut out = Outcome::new(Table::new(&["cutoff", "value", "limit", "abs_diff", "oracle_checked"]));
            let v = gcd_double_sum(Parity::All, Parity::All, c)?;
            // the plain double loop is quadratic in big rationals; only used at small cutoffs
            let checked = c <= 200;
            if checked {
                let mu = mobius_table(c as usize);
                let mut naive = BigRational::zero();
                for m in 1..=c {
                    for n in 1..=c {
                        let s = mu[m as usize] as i64 * mu[n as usize] as i64;
                        if s != 0 {
                            let g = gcd(m, n);
                            naive += BigRational::new((s * (g * g) as i64).into(), ((m * n) as i64).pow(2).into());
                        }
                    }
                }
                out.check(naive == v, || "gcd sum differs from the direct double loop".into());
            }
            let value = v.to_f64().unwrap_or(f64::NAN);
            let limit = gcd_double_limit(Parity::All, Parity::All);
            out.table
                .push(vec![c.into(), value.into(), limit.into(), (value - limit).abs().into(), checked.into()]);
            Ok(out)
        }
        LemmaCheck::Series => {
            let mut out = Outcome::new(Table::new(&["variant", "cutoff", "value", "limit", "abs_diff", "paths_agree"]));
            for v in SeriesVariant::ALL {
                let direct = theorem_series_value(v, c)?;
                let assembled = series_assembly(v, c)?;
                let ok = direct == assembled;
                out.check(ok, || format!("series paths disagree for {v}"));
                let value = direct.to_f64().unwrap_or(f64::NAN);
                let limit = series_limit(v);
                out.table.push(vec![
                    v.to_string().into(),
                    c.into(),
                    value.into(),
                    limit.into(),
                    (value - limit).abs().into(),
                    ok.into(),
                ]);
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssumptionArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    #[serde(deserialize_with = "from_str")]
    pub delta: Exponent,
    #[arg(long = "X")]
    #[serde(rename = "X")]
    pub x: u64,
    /// Fail when any conditional frequency is farther than this from 1/m.
    #[arg(long)]
    #[serde(default)]
    pub tolerance: Option<f64>,
}

pub fn assumption_test(a: &AssumptionArgs) -> Result<Outcome> {
    let mat = assumption_correlation_test(a.m, a.n, a.delta, a.x)?;
    let mut out = Outcome::new(Table::new(&["r_n", "r_m", "count", "frequency", "deviation"]));
    let target = 1.0 / a.m as f64;
    for rn in 0..a.n as usize {
        for rm in 0..a.m as usize {
            let f = mat.frequency(rn, rm);
            out.table
                .push(vec![rn.into(), rm.into(), mat.counts[rn][rm].into(), f.into(), (f - target).abs().into()]);
        }
    }
    if let Some(tol) = a.tolerance {
        let dev = mat.max_deviation();
        out.check(dev <= tol, || format!("max deviation {dev} exceeds {tol}"));
    }
    Ok(out)
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FfVarianceArgs {
    #[arg(long, required_unless_present = "sweep")]
    #[serde(default)]
    pub q: Option<u64>,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub h: usize,
    /// Fail unless the character formula matches the enumeration.
    #[arg(long)]
    #[serde(default)]
    pub formula_check: bool,
    /// Run every listed prime instead of --q.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub sweep: Vec<u64>,
}

pub const FF_VARIANCE_HEADER: [&str; 9] = [
    "q",
    "n",
    "h",
    "var_bruteforce_num",
    "var_bruteforce_den",
    "var_formula",
    "normalized",
    "nonprimitive_share",
    "max_rh_violation",
];

fn report_cells(r: &VarianceReport) -> Vec<Cell> {
    let [num, den] = ratio_cells(&r.var_bruteforce);
    vec![
        r.q.into(),
        r.n.into(),
        r.h.into(),
        num,
        den,
        r.var_formula.into(),
        r.normalized.into(),
        r.nonprimitive_share().into(),
        r.max_rh_violation().into(),
    ]
}

pub fn ff_variance(a: &FfVarianceArgs) -> Result<Outcome> {
    let reports = match (a.q, a.sweep.is_empty()) {
        (_, false) => asymptotic_sweep(&a.sweep, a.n, a.h)?,
        (Some(q), true) => vec![variance_report(FieldCtx::new(q)?, a.n, a.h)?],
        (None, true) => return Err(crate::ConfigError("ff-variance needs q or a non-empty sweep".into()).into()),
    };
    let mut out = Outcome::new(Table::new(&FF_VARIANCE_HEADER));
    for r in &reports {
        if a.formula_check {
            let gap = r.relative_gap();
            out.check(gap < DUAL_PATH_TOL || (r.var_bruteforce.is_zero() && r.var_formula.abs() < 1e-15), || {
                format!("q={}: formula differs from enumeration by {gap:e} relative", r.q)
            });
        }
        if r.flagged {
            eprintln!("warning: q={} n={} h={}: n − h < 5, asymptotic comparison not meaningful", r.q, r.n, r.h);
        }
        out.table.push(report_cells(r));
    }
    Ok(out)
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharsumArgs {
    #[arg(long)]
    pub q: u64,
    /// Modulus T^m.
    #[arg(long)]
    pub m: usize,
    /// Largest degree of the sums (defaults to m).
    #[arg(long)]
    #[serde(default)]
    pub n: Option<usize>,
}

pub fn ff_charsum_check(a: &CharsumArgs) -> Result<Outcome> {
    let ctx = FieldCtx::new(a.q)?;
    let n = a.n.unwrap_or(a.m);
    let tbl = build_unit_group(ctx, a.m)?;
    let beta = BetaWeights::new(ctx, n)?;
    let mut out = Outcome::new(Table::new(&["char_index", "is_primitive", "conductor", "max_rel_gap_m", "rel_gap_s"]));
    for chi in enumerate_even_characters(&tbl).filter(|c| !c.is_principal) {
        let data = l_polynomial(&tbl, &chi)?;
        let mut worst = 0.0f64;
        for k in 0..=n {
            worst = worst.max(relative_gap(char_sum_m(&tbl, &beta, &chi, k)?, data.char_sum_closed(k)));
        }
        let s_gap = relative_gap(weighted_sum_s(&tbl, &beta, &chi, n)?, data.weighted_sum_closed(n));
        out.check(worst < DUAL_PATH_TOL && s_gap < DUAL_PATH_TOL, || {
            format!("character {}: gaps {worst:e} / {s_gap:e}", chi.index)
        });
        out.table.push(vec![
            chi.index.into(),
            chi.is_primitive.into(),
            chi.conductor.into(),
            worst.into(),
            s_gap.into(),
        ]);
    }
    Ok(out)
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub m: usize,
}

pub fn ff_rh_check(a: &RhArgs) -> Result<Outcome> {
    let tbl = build_unit_group(FieldCtx::new(a.q)?, a.m)?;
    let mut out = Outcome::new(Table::new(&[
        "q",
        "m",
        "char_index",
        "is_even",
        "is_primitive",
        "l_coeffs",
        "max_rh_deviation",
    ]));
    for (chi, data) in even_l_data(&tbl)? {
        let dev = data.max_rh_deviation();
        let viol = data.max_rh_violation();
        out.check(!chi.is_primitive || dev < DUAL_PATH_TOL, || {
            format!("primitive character {}: | |α| − √q | / √q = {dev:e}", chi.index)
        });
        out.check(viol <= DUAL_PATH_TOL, || format!("character {}: |α| exceeds √q by {viol:e}", chi.index));
        out.table.push(vec![
            a.q.into(),
            a.m.into(),
            chi.index.into(),
            chi.is_even.into(),
            chi.is_primitive.into(),
            data.l_coeffs_text().into(),
            dev.into(),
        ]);
    }
    Ok(out)
}
