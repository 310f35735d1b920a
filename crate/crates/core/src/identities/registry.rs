//! Built-in identities.

use crate::clausen::{ClausenOrder, RationalAngle};
use crate::error::{Error, Result};
use crate::sequences::{LucasParams, Rational};
use crate::series::{angle_catalog, QuadraticSurd, SeriesKind, ThetaPoint};

use super::expr::ConstExpr;
use super::{ComboTerm, IdentitySpec, Lhs, Parity, SeriesTerm};

fn q(numer: i64, denom: u64) -> ConstExpr {
    ConstExpr::ratio(numer, denom)
}

fn zeta3_times(numer: i64, denom: u64) -> ConstExpr {
    ConstExpr::scaled(Rational::from((numer, denom)), ConstExpr::Zeta3)
}

fn mul(factors: Vec<ConstExpr>) -> ConstExpr {
    ConstExpr::Product(factors)
}

fn add(terms: Vec<ConstExpr>) -> ConstExpr {
    ConstExpr::Sum(terms)
}

fn log_surd(text: &str) -> ConstExpr {
    ConstExpr::log_of(text.parse().expect("valid surd literal"))
}

fn spec(id: impl Into<String>, lhs: Lhs, rhs: ConstExpr, source: &str) -> IdentitySpec {
    IdentitySpec { id: id.into(), lhs, rhs, source: source.into() }
}

const PHI: &str = "1/2+1/2*sqrt5";

/// `(c_zeta·ζ(3) + c_pi·π²·log_part) / denom`, the shape of the four Lucas-sum identities.
fn lucas_rhs(denom: u64, c_zeta: i64, c_pi: i64, log_part: ConstExpr) -> ConstExpr {
    let pi_part = if c_pi == 1 {
        mul(vec![ConstExpr::pi_squared(), log_part])
    } else {
        mul(vec![q(c_pi, 1), ConstExpr::pi_squared(), log_part])
    };
    mul(vec![q(1, denom), add(vec![mul(vec![q(c_zeta, 1), ConstExpr::Zeta3]), pi_part])])
}

fn lucas_identities() -> Vec<IdentitySpec> {
    let v42_logs = |log2_coeff: i64| {
        add(vec![mul(vec![q(log2_coeff, 1), ConstExpr::log_int(2)]), mul(vec![q(8, 1), log_surd("1+sqrt2")])])
    };
    vec![
        spec(
            "sun-L2n",
            Lhs::LucasSum(LucasParams::new(3, 1)),
            lucas_rhs(25, 41, 4, log_surd(PHI)),
            "Lucas-weighted sum, v_n(3,1) = L_2n",
        ),
        spec(
            "sun-v55",
            Lhs::LucasSum(LucasParams::new(5, 5)),
            lucas_rhs(
                50,
                124,
                1,
                add(vec![mul(vec![q(5, 1), ConstExpr::log_int(5)]), mul(vec![q(6, 1), log_surd(PHI)])]),
            ),
            "Lucas-weighted sum, v_n(5,5); log(5^5 phi^6) = 5 log 5 + 6 log phi",
        ),
        spec(
            "sun-v41",
            Lhs::LucasSum(LucasParams::new(4, 1)),
            lucas_rhs(12, 23, 2, log_surd("2+sqrt3")),
            "Lucas-weighted sum, v_n(4,1)",
        ),
        spec(
            "sun-v42",
            Lhs::LucasSum(LucasParams::new(4, 2)),
            lucas_rhs(128, 259, 2, v42_logs(4)),
            "Lucas-weighted sum, v_n(4,2), conjectured form",
        ),
        spec(
            "sun-v42-simplified",
            Lhs::LucasSum(LucasParams::new(4, 2)),
            add(vec![
                zeta3_times(259, 128),
                mul(vec![
                    q(1, 16),
                    ConstExpr::pi_squared(),
                    add(vec![ConstExpr::log_int(2), mul(vec![q(2, 1), log_surd("1+sqrt2")])]),
                ]),
            ]),
            "conjectured v_n(4,2) right-hand side, reduced to 259/128 ζ(3) + π²(log 2 + 2 log(1+√2))/16",
        ),
        spec(
            "sun-v42-corrected",
            Lhs::LucasSum(LucasParams::new(4, 2)),
            lucas_rhs(128, 259, 2, v42_logs(5)),
            "v_n(4,2) right-hand side with the log 2 coefficient recomputed from the Clausen values (5, not 4)",
        ),
    ]
}

fn pair(order: ClausenOrder, a: RationalAngle, b: RationalAngle) -> Lhs {
    let one = || Rational::from(1);
    Lhs::ClausenCombo { order, terms: vec![ComboTerm { coeff: one(), theta: a }, ComboTerm { coeff: one(), theta: b }] }
}

fn clausen_identities() -> Vec<IdentitySpec> {
    let f = RationalAngle::frac;
    let three = ClausenOrder::Three;
    let mut out = vec![
        spec("cl3-combo-pi4", pair(three, f(1, 4), f(3, 4)), zeta3_times(-3, 128), "distribution relation, r = 4"),
        spec("cl3-combo-pi5", pair(three, f(1, 5), f(3, 5)), zeta3_times(9, 25), "distribution relation, r = 5"),
        spec("cl3-combo-pi6", pair(three, f(1, 6), f(5, 6)), zeta3_times(1, 12), "distribution relation, r = 6"),
        spec(
            "cl3-combo-2pi5",
            pair(three, f(2, 5), f(4, 5)),
            zeta3_times(-12, 25),
            "even distribution relation, r = 5",
        ),
    ];
    for r in 1..=12u64 {
        let r_sq = r * r;
        out.push(spec(
            format!("dist-odd-r{r}"),
            Lhs::DistributionSum { parity: Parity::Odd, r },
            zeta3_times(-3, 4 * r_sq),
            "Cl3 distribution relation over odd multiples of π/r",
        ));
    }
    for r in 2..=12u64 {
        let r_sq = r * r;
        out.push(spec(
            format!("dist-even-r{r}"),
            Lhs::DistributionSum { parity: Parity::Even, r },
            zeta3_times(-((r_sq - 1) as i64), r_sq),
            "Cl3 distribution relation over even multiples of π/r",
        ));
    }
    let single = |theta| Lhs::ClausenCombo { order: three, terms: vec![ComboTerm { coeff: Rational::from(1), theta }] };
    out.push(spec("cl3-special-0", single(RationalAngle::ZERO), ConstExpr::Zeta3, "Cl3(0) = ζ(3)"));
    out.push(spec("cl3-special-pi2", single(f(1, 2)), zeta3_times(-3, 32), "Cl3(π/2) = Cl3(π)/8"));
    out.push(spec("cl3-special-pi", single(RationalAngle::PI), zeta3_times(-3, 4), "Cl3(π) = (2^-2 − 1)ζ(3)"));
    out
}

/// Clausen closed form of a series at an angle with an exact `u`, as an expression.
/// `log(2 sin(θ/2))` is written as `½ log u`.
pub fn dk_closed_form_expr(kind: SeriesKind, point: &ThetaPoint) -> Result<ConstExpr> {
    let u = point.surd.clone().ok_or_else(|| Error::Domain("closed-form expression needs an exact u".into()))?;
    let theta = point.theta;
    if theta.is_zero() {
        return Err(Error::Domain("closed-form expression needs θ > 0".into()));
    }
    let t = theta.as_rational();
    let t_sq = Rational::from(t.square_ref());
    let coef = |x: Rational| ConstExpr::Rational(x);
    let times = |k: i64, x: &Rational| coef(Rational::from(x * k));
    let sup = theta.supplement();
    let log_u = ConstExpr::log_of(u);
    let theta_cl2 = |k: i64, at: RationalAngle| mul(vec![times(k, &t), ConstExpr::Pi, ConstExpr::cl2(at)]);
    let cl3_times = |k: i64, at: RationalAngle| mul(vec![q(k, 1), ConstExpr::cl3(at)]);
    let expr = match kind {
        SeriesKind::S1 => add(vec![
            cl3_times(2, theta),
            theta_cl2(2, theta),
            zeta3_times(-2, 1),
            mul(vec![coef(t_sq / 2u32), ConstExpr::pi_squared(), log_u]),
        ]),
        SeriesKind::S2 => add(vec![cl3_times(4, sup), theta_cl2(-2, sup), zeta3_times(3, 1)]),
        SeriesKind::S3 => add(vec![
            cl3_times(-2, theta),
            cl3_times(4, sup),
            theta_cl2(-2, sup),
            theta_cl2(-1, theta),
            zeta3_times(5, 1),
        ]),
        SeriesKind::F => add(vec![
            ConstExpr::Zeta3,
            cl3_times(-1, theta),
            mul(vec![coef(t_sq / 4u32), ConstExpr::pi_squared(), log_u]),
        ]),
    };
    Ok(expr)
}

fn angle_tag(theta: RationalAngle) -> String {
    match theta.numer() {
        1 => format!("pi{}", theta.denom()),
        p => format!("{p}pi{}", theta.denom()),
    }
}

fn series_identities() -> Vec<IdentitySpec> {
    let mut out = Vec::new();
    for entry in angle_catalog() {
        for point in [&entry.upper, &entry.lower] {
            for kind in SeriesKind::ALL {
                let id = format!("dk-{}-at-{}", kind.to_string().to_lowercase(), angle_tag(point.theta));
                let rhs = dk_closed_form_expr(kind, point).expect("catalog points carry exact u");
                out.push(spec(
                    id,
                    Lhs::SeriesAtTheta { kind, point: point.clone() },
                    rhs,
                    "Clausen closed form of the generating function",
                ));
            }
        }
    }
    let third = ThetaPoint { theta: RationalAngle::frac(1, 3), surd: Some(QuadraticSurd::integer(1)) };
    out.push(spec(
        "comb-decomposition",
        Lhs::SeriesCombination {
            point: third,
            terms: vec![
                SeriesTerm { coeff: Rational::from(1), kind: SeriesKind::S3 },
                SeriesTerm { coeff: Rational::from(-1), kind: SeriesKind::S2 },
                SeriesTerm { coeff: Rational::from((1, 2)), kind: SeriesKind::S1 },
            ],
        },
        zeta3_times(2, 3),
        "H_2n − H_(n−1) = H_(2n−1) − H_(n−1) + 1/(2n) at u = 1, where F = ζ(3) − Cl3(π/3)",
    ));
    out
}

pub fn builtin_registry() -> Vec<IdentitySpec> {
    let mut all = lucas_identities();
    all.extend(clausen_identities());
    all.extend(series_identities());
    all
}

pub fn find_identity(id: &str) -> Result<IdentitySpec> {
    builtin_registry().into_iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownIdentity(id.into()))
}
