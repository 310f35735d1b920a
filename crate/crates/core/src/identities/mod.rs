//! Identities as data: a left-hand side that is summed or evaluated
//! numerically, and an exact right-hand side.

pub mod expr;
mod registry;
mod verify;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::clausen::{clausen, distribution_sum_even, distribution_sum_odd, ClausenOrder, RationalAngle};
use crate::error::{Error, Result};
use crate::numerics::{BigReal, Estimate, PrecisionContext};
use crate::sequences::{LucasParams, Rational};
use crate::series::{catalog_entry, sum_direct, SeriesKind, ThetaPoint};

pub use expr::ConstExpr;
pub use registry::{builtin_registry, dk_closed_form_expr, find_identity};
pub use verify::{
    classify, render_table, reports_from_json, reports_to_json, verify, verify_all, verify_batch, verify_with,
    ReportRecord, Verdict, VerificationReport,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentitySpec {
    pub id: String,
    pub lhs: Lhs,
    pub rhs: ConstExpr,
    pub source: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComboTerm {
    #[serde(with = "rational_string")]
    pub coeff: Rational,
    pub theta: RationalAngle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    #[serde(with = "rational_string")]
    pub coeff: Rational,
    pub kind: SeriesKind,
}

/// What gets evaluated numerically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lhs {
    /// `Σ vₙ(A,B)(H_{2n} − H_{n−1})/(n² C(2n,n))`, summed as `F(α) + F(β)`.
    LucasSum(LucasParams),
    SeriesAtTheta {
        kind: SeriesKind,
        point: ThetaPoint,
    },
    ClausenCombo {
        order: ClausenOrder,
        terms: Vec<ComboTerm>,
    },
    DistributionSum {
        parity: Parity,
        r: u64,
    },
    SeriesCombination {
        point: ThetaPoint,
        terms: Vec<SeriesTerm>,
    },
}

/// Numeric left-hand side with its certified error.
#[derive(Clone, Debug)]
pub struct LhsValue {
    pub value: BigReal,
    pub error: BigReal,
    pub terms_used: usize,
}

pub fn evaluate_lhs(lhs: &Lhs, ctx: &PrecisionContext, max_terms: usize) -> Result<LhsValue> {
    let mut acc = LhsValue { value: ctx.zero(), error: ctx.zero(), terms_used: 0 };
    let mut add = |coeff: &Rational, est: Estimate, terms: usize| {
        let scaled = rug::Float::with_val(ctx.bits(), &est.value * coeff);
        acc.value += scaled;
        acc.error += rug::Float::with_val(ctx.bits(), &est.error * coeff).abs();
        acc.terms_used += terms;
    };
    let one = Rational::from(1);
    match lhs {
        Lhs::LucasSum(params) => {
            let branches = match catalog_entry(*params) {
                Some(entry) => vec![entry.upper.u(ctx), entry.lower.u(ctx)],
                None => {
                    let (alpha, beta) = params.roots(ctx)?;
                    vec![alpha, beta]
                }
            };
            for u in branches {
                let sum = sum_direct(SeriesKind::F, &u, ctx, max_terms)?;
                add(&one, sum.estimate(), sum.terms_used);
            }
        }
        Lhs::SeriesAtTheta { kind, point } => {
            point.validate()?;
            let sum = sum_direct(*kind, &point.u(ctx), ctx, max_terms)?;
            add(&one, sum.estimate(), sum.terms_used);
        }
        Lhs::ClausenCombo { order, terms } => {
            for term in terms {
                add(&term.coeff, clausen(*order, term.theta, ctx), 0);
            }
        }
        Lhs::DistributionSum { parity, r } => {
            let est = match parity {
                Parity::Odd => distribution_sum_odd(*r, ctx)?,
                Parity::Even => distribution_sum_even(*r, ctx)?,
            };
            add(&one, est, 0);
        }
        Lhs::SeriesCombination { point, terms } => {
            point.validate()?;
            let u = point.u(ctx);
            for term in terms {
                let sum = sum_direct(term.kind, &u, ctx, max_terms)?;
                add(&term.coeff, sum.estimate(), sum.terms_used);
            }
        }
    }
    Ok(acc)
}

/// Parses an identity file: a JSON array of identity objects.
pub fn load_identities(text: &str) -> Result<Vec<IdentitySpec>> {
    let specs: Vec<IdentitySpec> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("identity file: {e}")))?;
    let mut seen = HashSet::new();
    for spec in &specs {
        if !seen.insert(spec.id.as_str()) {
            return Err(Error::Parse(format!("duplicate identity id `{}`", spec.id)));
        }
        match &spec.lhs {
            Lhs::SeriesAtTheta { point, .. } | Lhs::SeriesCombination { point, .. } => point.validate()?,
            _ => {}
        }
    }
    Ok(specs)
}

pub fn identities_to_json(specs: &[IdentitySpec]) -> String {
    serde_json::to_string_pretty(specs).expect("identity specs serialize")
}

mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::sequences::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
