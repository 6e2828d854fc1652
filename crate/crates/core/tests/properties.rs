//! Cross-module properties exercised through the public API only.

use num::complex::Complex64;
use num::ToPrimitive;
use proptest::prelude::*;

use phivar_core::charlfun::{
    build_unit_group, char_value, enumerate_characters, enumerate_even_characters, l_polynomial,
};
use phivar_core::ffpoly::{beta, enumerate_monic, FieldCtx, Poly, TotientTable};
use phivar_core::variance::{bruteforce_variance, bruteforce_variance_full, formula_variance};

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn variance_paths_agree(q in prime(), n in 2usize..6, h_off in 0usize..3) {
        prop_assume!((q as u128).pow(n as u32) <= 20_000);
        let h = (n - 2).saturating_sub(h_off);
        let ctx = FieldCtx::new(q).unwrap();
        let table = TotientTable::new(ctx, n).unwrap();
        let fast = bruteforce_variance(&table, n, h).unwrap();
        prop_assert_eq!(&fast, &bruteforce_variance_full(&table, n, h).unwrap());
        let exact = fast.variance.to_f64().unwrap();
        let formula = formula_variance(ctx, n, h).unwrap();
        prop_assert!((formula - exact).abs() <= 1e-9 * exact.max(1e-300) || (exact == 0.0 && formula.abs() < 1e-15));
    }

    #[test]
    fn characters_are_multiplicative(q in prime(), m in 2usize..5, a in prop::collection::vec(0u64..7, 1..7), b in prop::collection::vec(0u64..7, 1..7)) {
        let ctx = FieldCtx::new(q).unwrap();
        let tbl = build_unit_group(ctx, m).unwrap();
        let f = Poly::new(ctx, a.iter().map(|c| c % q).collect());
        let g = Poly::new(ctx, b.iter().map(|c| c % q).collect());
        let fg = &f * &g;
        for chi in enumerate_characters(&tbl).step_by(3) {
            let lhs = char_value(&tbl, &chi, &fg);
            let rhs = char_value(&tbl, &chi, &f) * char_value(&tbl, &chi, &g);
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }
    }
}

#[test]
fn l_function_counts_weighted_by_beta() {
    // Σ_f β(f)χ(f)u^{deg f} = L(u)/L(u/q): compare degree-k coefficients with explicit enumeration
    let ctx = FieldCtx::new(3).unwrap();
    let tbl = build_unit_group(ctx, 4).unwrap();
    for chi in enumerate_even_characters(&tbl).filter(|c| c.is_primitive).take(6) {
        let data = l_polynomial(&tbl, &chi).unwrap();
        for k in 0..=6 {
            let direct: Complex64 = enumerate_monic(ctx, k)
                .unwrap()
                .map(|f| beta(&f).unwrap().to_f64().unwrap() * char_value(&tbl, &chi, &f))
                .sum();
            assert!((direct - data.char_sum_closed(k)).norm() < 1e-10, "k = {k}");
        }
    }
}
