use apery_core::identities::{
    builtin_registry, find_identity, identities_to_json, load_identities, verify, verify_batch, ConstExpr, Verdict,
    VerificationReport,
};
use apery_core::numerics::PrecisionContext;
use apery_core::series::DEFAULT_MAX_TERMS;

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

/// Everything except the wall-clock time.
fn fingerprint(r: &VerificationReport) -> String {
    format!(
        "{}|{}|{}|{}|{}|{}|{}|{}|{:?}|{:?}",
        r.identity_id,
        r.target_digits,
        r.lhs_value,
        r.rhs_value,
        r.abs_gap,
        r.certified_error,
        r.matched_digits,
        r.terms_used,
        r.verdict,
        r.note
    )
}

const MISPRINTED: [&str; 2] = ["sun-v42", "sun-v42-simplified"];

#[test]
fn batch_verdicts_at_10_and_40_digits() {
    for digits in [10, 40] {
        let reports = verify_batch(&builtin_registry(), &ctx(digits), DEFAULT_MAX_TERMS, 0);
        for r in &reports {
            let expected =
                if MISPRINTED.contains(&r.identity_id.as_str()) { Verdict::Failed } else { Verdict::Verified };
            assert_eq!(r.verdict, expected, "{} at {digits} digits: gap {}", r.identity_id, r.abs_gap);
        }
    }
}

#[test]
fn lucas_identities_match_to_target() {
    for digits in [20, 40, 60, 100] {
        let c = ctx(digits);
        for id in ["sun-L2n", "sun-v55", "sun-v41", "sun-v42-corrected"] {
            let r = verify(&find_identity(id).unwrap(), &c);
            assert!(r.matched_digits + 2 >= digits, "{id} at {digits}: {} digits", r.matched_digits);
        }
    }
}

#[test]
fn printed_and_simplified_v42_forms_agree() {
    let c = ctx(50);
    let a = find_identity("sun-v42").unwrap().rhs.eval(&c).unwrap();
    let b = find_identity("sun-v42-simplified").unwrap().rhs.eval(&c).unwrap();
    let gap = apery_core::rug::Float::with_val(c.bits(), &a - &b).abs();
    assert!(gap < c.pow10(-60));
}

#[test]
fn verification_is_deterministic() {
    let c = ctx(30);
    let specs = builtin_registry();
    let first: Vec<String> = verify_batch(&specs, &c, DEFAULT_MAX_TERMS, 4).iter().map(fingerprint).collect();
    let second: Vec<String> = verify_batch(&specs, &c, DEFAULT_MAX_TERMS, 1).iter().map(fingerprint).collect();
    assert_eq!(first, second);
}

#[test]
fn rhs_json_round_trip_is_value_stable() {
    let c = ctx(40);
    for spec in builtin_registry() {
        let back = ConstExpr::from_json(&spec.rhs.to_json()).unwrap();
        assert_eq!(back, spec.rhs);
        assert_eq!(back.eval(&c).unwrap(), spec.rhs.eval(&c).unwrap(), "{}", spec.id);
    }
    let text = identities_to_json(&builtin_registry());
    assert_eq!(identities_to_json(&load_identities(&text).unwrap()), text);
}

#[test]
fn every_rational_coefficient_is_load_bearing() {
    let c = ctx(20);
    let mut checked = 0;
    for spec in builtin_registry() {
        if verify(&spec, &c).verdict != Verdict::Verified {
            continue;
        }
        for index in 0..spec.rhs.rational_atom_count() {
            for delta in [-1, 1] {
                let mut mutant = spec.clone();
                mutant.rhs = spec.rhs.perturb_rational(index, delta).unwrap();
                let r = verify(&mutant, &c);
                assert_eq!(r.verdict, Verdict::Failed, "{} atom {index} {delta:+}: gap {}", spec.id, r.abs_gap);
                checked += 1;
            }
        }
    }
    assert!(checked > 200, "{checked}");
}

#[test]
fn corrupted_entry_fails_alone() {
    let c = ctx(40);
    let mut specs: Vec<_> =
        ["sun-L2n", "sun-v41", "dist-odd-r3", "cl3-combo-pi5"].iter().map(|id| find_identity(id).unwrap()).collect();
    let corrupted: ConstExpr = serde_json::from_str(
        r#"["mul",["q","1/25"],["add",["mul",["q","42"],["zeta3"]],["mul",["q","4"],["pow",["pi"],2],["log","1/2+1/2*sqrt5"]]]]"#,
    )
    .unwrap();
    specs[0].rhs = corrupted;
    let reports = verify_batch(&specs, &c, DEFAULT_MAX_TERMS, 2);
    let verdicts: Vec<Verdict> = reports.iter().map(|r| r.verdict).collect();
    assert_eq!(verdicts, [Verdict::Failed, Verdict::Verified, Verdict::Verified, Verdict::Verified]);
}
