use apery_core::clausen::RationalAngle;
use apery_core::numerics::{format_decimal, PrecisionContext};
use apery_core::rug::Float;
use apery_core::series::{
    closed_form, combined_identity_residual, sum_direct, sum_partial, QuadraticSurd, SeriesKind, ThetaPoint,
    DEFAULT_MAX_TERMS,
};
use proptest::prelude::*;

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn angles() -> Vec<ThetaPoint> {
    [(1, 6), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2), (3, 5), (3, 4), (4, 5), (5, 6)]
        .into_iter()
        .map(|(p, q)| ThetaPoint::from_angle(RationalAngle::frac(p, q)).unwrap())
        .collect()
}

// Direct partial sums from an independent mpmath script, 40 significant digits.
const DIRECT: &[(&str, SeriesKind, &str)] = &[
    ("1", SeriesKind::S1, "0.5229461921333351084911851835273035401630"),
    ("1", SeriesKind::S2, "0.05205483963097468947245593148561430347963"),
    ("1", SeriesKind::S3, "0.5919530123373699921600221140629291939081"),
    ("2", SeriesKind::F, "1.742317766821876033708931061275279431855"),
    ("2+sqrt3", SeriesKind::S1, "2.363169182661031780881256051814091815049"),
    ("2+sqrt3", SeriesKind::S2, "2.710234210333394772120537844860615760733"),
    ("2+sqrt3", SeriesKind::S3, "5.794592405936286600620825362092180009594"),
    ("2+sqrt3", SeriesKind::F, "4.265942786933407718940915543138610156386"),
    ("3.9", SeriesKind::S1, "2.525164763857876460481275577214334106846"),
    ("3.9", SeriesKind::F, "4.782256371482836369492910260521532463334"),
];

#[test]
fn direct_sums_match_reference() {
    let c = ctx(40);
    for &(u, kind, expected) in DIRECT {
        let u_val = u.parse::<QuadraticSurd>().unwrap().value(&c);
        let sum = sum_direct(kind, &u_val, &c, DEFAULT_MAX_TERMS).unwrap();
        let gap = Float::with_val(c.bits(), &sum.value - &c.parse_real(expected).unwrap()).abs();
        assert!(gap < c.pow10(-38), "{kind}({u}) = {}", format_decimal(&sum.value, 45));
        assert!(sum.certified_error() < c.pow10(-40));
    }
}

#[test]
fn closed_forms_match_direct_sums() {
    let c = ctx(40);
    for point in angles() {
        let u = point.u(&c);
        for kind in SeriesKind::ALL {
            let direct = sum_direct(kind, &u, &c, DEFAULT_MAX_TERMS).unwrap();
            let closed = closed_form(kind, &point, &c).unwrap();
            let gap = Float::with_val(c.bits(), &direct.value - &closed.value).abs();
            let budget = Float::with_val(c.bits(), direct.certified_error() + &closed.error);
            assert!(gap <= budget.max(&c.target_tolerance()), "{kind} at {}: gap {gap}", point.theta);
        }
    }
}

#[test]
fn combined_residual_vanishes() {
    let c = ctx(40);
    for point in angles() {
        let residual = combined_identity_residual(&point, &c).unwrap();
        assert!(residual.abs() < c.pow10(-38), "θ = {}", point.theta);
    }
}

#[test]
fn tail_bound_sound_at_slowest_catalog_point() {
    let c = ctx(40);
    let u = "2+sqrt3".parse::<QuadraticSurd>().unwrap().value(&c);
    for kind in SeriesKind::ALL {
        for n in [10, 50, 200, 600] {
            let short = sum_partial(kind, &u, &c, n).unwrap();
            let long = sum_partial(kind, &u, &c, 2 * n).unwrap();
            let change = Float::with_val(c.bits(), &long.value - &short.value).abs();
            assert!(change < short.tail_bound, "{kind}, N = {n}");
        }
    }
}

#[test]
fn sum_direct_reports_its_budget() {
    let c = ctx(30);
    let u = c.real(3);
    let sum = sum_direct(SeriesKind::S3, &u, &c, DEFAULT_MAX_TERMS).unwrap();
    let again = sum_partial(SeriesKind::S3, &u, &c, sum.terms_used).unwrap();
    assert_eq!(sum.value, again.value);
    assert!(sum.tail_bound < c.work_tolerance());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sums_increase_with_u(a in 1u32..390, b in 1u32..390, k in 0usize..4) {
        prop_assume!(a != b);
        let c = ctx(20);
        let kind = SeriesKind::ALL[k];
        let (lo, hi) = (a.min(b), a.max(b));
        let s_lo = sum_direct(kind, &(Float::with_val(c.bits(), lo) / 100u32), &c, DEFAULT_MAX_TERMS).unwrap();
        let s_hi = sum_direct(kind, &(Float::with_val(c.bits(), hi) / 100u32), &c, DEFAULT_MAX_TERMS).unwrap();
        prop_assert!(s_lo.value < s_hi.value);
    }

    #[test]
    fn partial_sums_increase_and_stay_within_tail(n in 2usize..400, k in 0usize..4) {
        let c = ctx(25);
        let kind = SeriesKind::ALL[k];
        let u = Float::with_val(c.bits(), 37u32) / 10u32;
        let a = sum_partial(kind, &u, &c, n).unwrap();
        let b = sum_partial(kind, &u, &c, n + 1).unwrap();
        let full = sum_direct(kind, &u, &c, DEFAULT_MAX_TERMS).unwrap();
        prop_assert!(a.value < b.value);
        let rest = Float::with_val(c.bits(), &full.value - &a.value);
        prop_assert!(rest > 0u32 && rest <= a.tail_bound);
    }
}

#[test]
fn f_decomposes_coefficientwise() {
    use apery_core::rug::Rational;
    use apery_core::sequences::harmonic;
    for n in 1..=100u64 {
        let lhs = harmonic(2 * n) - harmonic(n - 1);
        let rhs = harmonic(2 * n - 1) - harmonic(n - 1) + Rational::from((1, 2 * n));
        assert_eq!(lhs, rhs, "n = {n}");
    }
}

#[test]
fn tail_bound_holds_against_million_term_runs() {
    let c = ctx(30);
    let u = Float::with_val(c.bits(), 39u32) / 10u32;
    for kind in SeriesKind::ALL {
        let reference = sum_partial(kind, &u, &c, 1_000_000).unwrap();
        for n in [20, 100, 500, 1500, 3000] {
            let partial = sum_partial(kind, &u, &c, n).unwrap();
            let rest = Float::with_val(c.bits(), &reference.value - &partial.value);
            assert!(rest <= partial.tail_bound, "{kind}, N = {n}");
        }
    }
}
