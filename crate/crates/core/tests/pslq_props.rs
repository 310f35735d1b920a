use apery_core::identities::ConstExpr;
use apery_core::numerics::{const_pi, zeta3, PrecisionContext};
use apery_core::pslq::{find_relation, normalize, rediscover};
use apery_core::rug::{Float, Integer};
use apery_core::series::QuadraticSurd;
use apery_core::Error;
use proptest::prelude::*;

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn pi2log(surd: &str) -> ConstExpr {
    ConstExpr::Product(vec![ConstExpr::pi_squared(), ConstExpr::log_of(surd.parse::<QuadraticSurd>().unwrap())])
}

fn as_i64(v: &Option<Vec<Integer>>) -> Option<Vec<i64>> {
    v.as_ref().map(|c| c.iter().map(|m| m.to_i64().unwrap()).collect())
}

#[test]
fn rediscovers_lucas_coefficients() {
    let c = ctx(80);
    let cases = [
        ("sun-L2n", vec![ConstExpr::Zeta3, pi2log("1/2+1/2*sqrt5")], vec![25, -41, -4]),
        ("sun-v41", vec![ConstExpr::Zeta3, pi2log("2+sqrt3")], vec![12, -23, -2]),
        ("sun-v55", vec![ConstExpr::Zeta3, pi2log("5"), pi2log("1/2+1/2*sqrt5")], vec![50, -124, -5, -6]),
        ("sun-v42", vec![ConstExpr::Zeta3, pi2log("2"), pi2log("1+sqrt2")], vec![128, -259, -10, -16]),
    ];
    for (id, basis, expected) in cases {
        let r = rediscover(id, &basis, &c, 4).unwrap();
        assert_eq!(as_i64(&r.coefficients), Some(expected), "{id}");
        assert!(r.residual < c.pow10(-60));
    }
}

#[test]
fn zeta3_alone_does_not_explain_l2n() {
    let r = rediscover("sun-L2n", &[ConstExpr::Zeta3], &ctx(80), 4).unwrap();
    assert!(r.coefficients.is_none());
    assert!(r.exclusion_bound > 1e4);
}

#[test]
fn truncated_pi_is_not_pi() {
    let c = ctx(6);
    let err = find_relation(&[c.parse_real("3.14159").unwrap(), const_pi(&c)], &c, 4).unwrap_err();
    assert!(matches!(err, Error::InsufficientPrecision { .. }));
    let c = ctx(30);
    let r = find_relation(&[c.parse_real("3.14159").unwrap(), const_pi(&c)], &c, 4).unwrap();
    assert!(r.coefficients.is_none());
}

#[test]
fn relations_are_sound() {
    let c = ctx(60);
    let z = zeta3(&c);
    let p = const_pi(&c);
    let combo = Float::with_val(c.bits(), &z * 17u32) - Float::with_val(c.bits(), &p * 5u32);
    let values = [combo, z, p];
    let r = find_relation(&values, &c, 3).unwrap();
    let m = r.coefficients.clone().unwrap();
    let mut fresh = c.zero();
    for (mi, v) in m.iter().zip(&values) {
        fresh += Float::with_val(c.bits(), v * mi);
    }
    assert!(fresh.abs() <= r.residual);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn detection_is_scale_invariant(num in 1u32..50, den in 1u32..50) {
        let c = ctx(60);
        let z = zeta3(&c);
        let p2 = Float::with_val(c.bits(), const_pi(&c).square_ref());
        let x = Float::with_val(c.bits(), &z * 9u32) + Float::with_val(c.bits(), &p2 * 4u32);
        let base = [x, z, p2];
        let scaled: Vec<Float> = base.iter().map(|v| Float::with_val(c.bits(), v * num) / den).collect();
        let a = find_relation(&base, &c, 3).unwrap();
        let b = find_relation(&scaled, &c, 3).unwrap();
        prop_assert!(a.coefficients.is_some());
        prop_assert_eq!(a.coefficients, b.coefficients);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn recovers_random_relations(
        mut m in prop::collection::vec(-999i64..=999, 2..=4),
        seeds in prop::collection::vec((1u64..u64::MAX, 1u32..10), 3),
    ) {
        let c = ctx(70);
        let n = m.len();
        if m[n - 1] == 0 {
            m[n - 1] = 1;
        }
        // Random basis reals, with the last one solved so that Σ mᵢvᵢ = 0 exactly.
        let mut values: Vec<Float> = seeds[..n - 1]
            .iter()
            .map(|&(q, k)| (Float::with_val(c.bits(), q) / u64::MAX + 0.5f64).sqrt() * k)
            .collect();
        let mut acc = c.zero();
        for (mi, v) in m.iter().zip(&values) {
            acc += Float::with_val(c.bits(), v * *mi);
        }
        values.push(-acc / m[n - 1]);
        let mut expected: Vec<Integer> = m.iter().map(|&x| Integer::from(x)).collect();
        normalize(&mut expected);
        let r = find_relation(&values, &c, 3).unwrap();
        prop_assert_eq!(r.coefficients, Some(expected));
    }
}
