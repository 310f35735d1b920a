use apery_core::numerics::PrecisionContext;
use apery_core::rug::ops::Pow;
use apery_core::rug::{Float, Integer, Rational};
use apery_core::sequences::{central_binomial, harmonic, lucas_number, lucas_v, LucasParams};
use proptest::prelude::*;

#[test]
fn v31_is_even_indexed_lucas() {
    let p = LucasParams::new(3, 1);
    for n in 0..=30 {
        assert_eq!(lucas_v(p, n), lucas_number(2 * n), "n = {n}");
    }
}

#[test]
fn harmonic_recurrence_exact() {
    let mut prev = Rational::new();
    for n in 1..=200u64 {
        let h = harmonic(n);
        assert_eq!(Rational::from(&h - &prev), Rational::from((1, n)));
        prev = h;
    }
}

#[test]
fn lucas_iterator_matches_closed_calls() {
    let p = LucasParams::new(5, 5);
    let from_iter: Vec<Integer> = p.iter().take(25).collect();
    let direct: Vec<Integer> = (0..25).map(|n| lucas_v(p, n)).collect();
    assert_eq!(from_iter, direct);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lucas_v_is_sum_of_root_powers(a in 2i64..9, b in 0i64..3, n in 0u32..40) {
        let params = LucasParams::new(a, b);
        prop_assume!(params.discriminant() >= 0);
        let ctx = PrecisionContext::new(40).unwrap();
        let (alpha, beta) = params.roots(&ctx).unwrap();
        let bits = ctx.bits();
        let sum = Float::with_val(bits, (&alpha).pow(n)) + Float::with_val(bits, (&beta).pow(n));
        let exact = Float::with_val(bits, &lucas_v(params, n as u64));
        let rel = Float::with_val(bits, &sum - &exact).abs() / exact.clone().abs().max(&Float::with_val(bits, 1));
        prop_assert!(rel < 1e-35, "n = {}, rel = {}", n, rel);
    }

    #[test]
    fn central_binomial_lower_bound(n in 0u64..400) {
        let c = central_binomial(n);
        let lower = Rational::from((Integer::from(Integer::u_pow_u(4, n as u32)), Integer::from(2 * n + 1)));
        prop_assert!(c >= lower);
        if n > 0 {
            let prev = central_binomial(n - 1);
            prop_assert_eq!(c * n, prev * (4 * n - 2));
        }
    }
}
