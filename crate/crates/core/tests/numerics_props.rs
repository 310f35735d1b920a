use apery_core::numerics::{const_pi, format_decimal, zeta3, zeta3_euler_maclaurin, zeta_even, PrecisionContext};
use apery_core::rug::Float;
use proptest::prelude::*;

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn agree(a: &Float, b: &Float, digits: u32) -> bool {
    let bits = a.prec().max(b.prec());
    let gap = Float::with_val(bits, a - b).abs();
    gap < Float::with_val(bits, Float::i_pow_u(10, digits)).recip()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constants_refine_monotonically(d in 10u32..120, extra in 1u32..40) {
        let lo = ctx(d);
        let hi = ctx(d + extra);
        prop_assert!(agree(&zeta3(&lo), &zeta3(&hi), d));
        prop_assert!(agree(&const_pi(&lo), &const_pi(&hi), d));
        prop_assert!(agree(&zeta_even(7, &lo).unwrap(), &zeta_even(7, &hi).unwrap(), d));
    }

    #[test]
    fn zeta3_routes_agree(d in 10u32..150) {
        let c = ctx(d);
        let em = zeta3_euler_maclaurin(&c);
        prop_assert!(agree(&zeta3(&c), &em.value, d));
    }

    #[test]
    fn even_zeta_values_decrease_towards_one(k in 1u32..60) {
        let c = ctx(30);
        let a = zeta_even(k, &c).unwrap();
        let b = zeta_even(k + 1, &c).unwrap();
        prop_assert!(a > 1u32 && a <= 2u32);
        prop_assert!(b > 1u32 && b < a);
    }
}

#[test]
fn guard_digits_are_honoured() {
    assert!(PrecisionContext::with_guard(20, 9).is_err());
    assert!(PrecisionContext::new(0).is_err());
    let c = PrecisionContext::with_guard(20, 10).unwrap();
    assert_eq!(c.work_digits(), 30);
    assert!(c.bits() as f64 >= 30.0 * std::f64::consts::LOG2_10);
}

#[test]
fn zeta3_to_forty_digits() {
    let c = ctx(40);
    assert_eq!(format_decimal(&zeta3(&c), 40), "1.202056903159594285399738161511449990765");
}
