//! Verification reports and verdicts.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{format_decimal, format_sci, BigReal, PrecisionContext};
use crate::series::DEFAULT_MAX_TERMS;

use super::{builtin_registry, evaluate_lhs, IdentitySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Verified,
    Inconclusive,
    Failed,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "Verified",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::Failed => "Failed",
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub identity_id: String,
    pub target_digits: u32,
    pub lhs_value: BigReal,
    pub rhs_value: BigReal,
    pub abs_gap: BigReal,
    pub certified_error: BigReal,
    pub matched_digits: u32,
    pub terms_used: usize,
    pub elapsed: Duration,
    pub verdict: Verdict,
    /// Set when evaluation failed; the numeric fields are NaN then.
    pub note: Option<String>,
}

/// Verified iff `gap ≤ max(cert, 10^-target)`, Failed iff the gap exceeds a thousand times that.
pub fn classify(abs_gap: &BigReal, certified_error: &BigReal, ctx: &PrecisionContext) -> Verdict {
    if abs_gap.is_nan() || certified_error.is_nan() {
        return Verdict::Inconclusive;
    }
    let tol = ctx.target_tolerance();
    let budget = if *certified_error > tol { certified_error.clone() } else { tol };
    if *abs_gap <= budget {
        Verdict::Verified
    } else if *abs_gap > budget * 1000u32 {
        Verdict::Failed
    } else {
        Verdict::Inconclusive
    }
}

fn matched_digits(gap: &BigReal, rhs: &BigReal, target: u32) -> u32 {
    if gap.is_zero() {
        return target;
    }
    let scale = if rhs.clone().abs() > 1u32 { rhs.clone().abs() } else { Float::with_val(gap.prec(), 1) };
    let rel = Float::with_val(gap.prec(), gap / &scale);
    let digits = -rel.log10().to_f64();
    if !digits.is_finite() || digits <= 0.0 {
        0
    } else {
        (digits.floor() as u32).min(target)
    }
}

pub fn verify(spec: &IdentitySpec, ctx: &PrecisionContext) -> VerificationReport {
    verify_with(spec, ctx, DEFAULT_MAX_TERMS)
}

pub fn verify_with(spec: &IdentitySpec, ctx: &PrecisionContext, max_terms: usize) -> VerificationReport {
    let start = Instant::now();
    let outcome = evaluate_lhs(&spec.lhs, ctx, max_terms).and_then(|lhs| Ok((lhs, spec.rhs.evaluate(ctx)?)));
    let elapsed = start.elapsed();
    match outcome {
        Ok((lhs, rhs)) => {
            let abs_gap = Float::with_val(ctx.bits(), &lhs.value - &rhs.value).abs();
            let certified_error = Float::with_val(ctx.bits(), &lhs.error + &rhs.error);
            VerificationReport {
                identity_id: spec.id.clone(),
                target_digits: ctx.target_digits(),
                matched_digits: matched_digits(&abs_gap, &rhs.value, ctx.target_digits()),
                verdict: classify(&abs_gap, &certified_error, ctx),
                lhs_value: lhs.value,
                rhs_value: rhs.value,
                abs_gap,
                certified_error,
                terms_used: lhs.terms_used,
                elapsed,
                note: None,
            }
        }
        Err(err) => {
            let nan = Float::with_val(ctx.bits(), rug::float::Special::Nan);
            let terms_used = match &err {
                Error::NotConverged { terms, .. } => *terms,
                _ => 0,
            };
            VerificationReport {
                identity_id: spec.id.clone(),
                target_digits: ctx.target_digits(),
                lhs_value: nan.clone(),
                rhs_value: nan.clone(),
                abs_gap: nan.clone(),
                certified_error: nan,
                matched_digits: 0,
                terms_used,
                elapsed,
                verdict: Verdict::Inconclusive,
                note: Some(err.to_string()),
            }
        }
    }
}

pub fn verify_all(ctx: &PrecisionContext) -> Vec<VerificationReport> {
    verify_batch(&builtin_registry(), ctx, DEFAULT_MAX_TERMS, 0)
}

/// Verifies `specs` concurrently on `jobs` threads (0 means one per core).
/// Reports come back in the order of `specs`.
pub fn verify_batch(
    specs: &[IdentitySpec],
    ctx: &PrecisionContext,
    max_terms: usize,
    jobs: usize,
) -> Vec<VerificationReport> {
    let run = || specs.par_iter().map(|s| verify_with(s, ctx, max_terms)).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => specs.iter().map(|s| verify_with(s, ctx, max_terms)).collect(),
    }
}

/// Serialized form of a report; reals are decimal strings at the target precision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub identity_id: String,
    pub target_digits: u32,
    pub lhs_value: String,
    pub rhs_value: String,
    pub abs_gap: String,
    pub certified_error: String,
    pub matched_digits: u32,
    pub terms_used: usize,
    pub elapsed_ms: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn real_string(x: &BigReal, digits: u32) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format_decimal(x, digits)
    }
}

impl From<&VerificationReport> for ReportRecord {
    fn from(r: &VerificationReport) -> Self {
        let digits = r.target_digits;
        Self {
            identity_id: r.identity_id.clone(),
            target_digits: digits,
            lhs_value: real_string(&r.lhs_value, digits),
            rhs_value: real_string(&r.rhs_value, digits),
            abs_gap: real_string(&r.abs_gap, 6),
            certified_error: real_string(&r.certified_error, 6),
            matched_digits: r.matched_digits,
            terms_used: r.terms_used,
            elapsed_ms: r.elapsed.as_millis() as u64,
            verdict: r.verdict,
            note: r.note.clone(),
        }
    }
}

pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    let records: Vec<ReportRecord> = reports.iter().map(ReportRecord::from).collect();
    serde_json::to_string_pretty(&records).expect("report records serialize")
}

pub fn reports_from_json(text: &str) -> Result<Vec<ReportRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("report JSON: {e}")))
}

pub fn render_table(reports: &[VerificationReport]) -> String {
    let width = reports.iter().map(|r| r.identity_id.len()).max().unwrap_or(8).max(8);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:<12}  {:>9}  {:>9}  {:>9}  {:>8}  {:>8}",
        "identity", "verdict", "gap", "error", "digits", "terms", "ms"
    );
    for r in reports {
        let sci = |x: &BigReal| if x.is_nan() { "-".to_string() } else { format_sci(x) };
        let _ = writeln!(
            out,
            "{:<width$}  {:<12}  {:>9}  {:>9}  {:>9}  {:>8}  {:>8}",
            r.identity_id,
            r.verdict.to_string(),
            sci(&r.abs_gap),
            sci(&r.certified_error),
            format!("{}/{}", r.matched_digits, r.target_digits),
            r.terms_used,
            r.elapsed.as_millis()
        );
        if let Some(note) = &r.note {
            let _ = writeln!(out, "{:<width$}  note: {note}", "");
        }
    }
    out
}
