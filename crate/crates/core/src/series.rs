//! Central-binomial series in `u = 4 sin²(θ/2)` and their Clausen closed forms.
//!
//! The four series, all over `n ≥ 1`:
//!
//! | kind | term |
//! |------|------|
//! | `S1` | `uⁿ / (n³ C(2n,n))` |
//! | `S2` | `H_{n−1} uⁿ / (n² C(2n,n))` |
//! | `S3` | `H_{2n−1} uⁿ / (n² C(2n,n))` |
//! | `F`  | `(H_{2n} − H_{n−1}) uⁿ / (n² C(2n,n))` |
//!
//! Direct sums carry a certified tail bound. For `n ≥ N` every term ratio is
//! at most `ρ_N = (u/4)·h_N`, where `h_N` bounds the harmonic-number ratio and
//! decreases in `N`; the omitted tail is then at most `t_N ρ_N / (1 − ρ_N)`.

use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clausen::{clausen, ClausenOrder, RationalAngle};
use crate::error::{Error, Result};
use crate::numerics::{format_sci, zeta3_estimate, BigReal, Estimate, PrecisionContext};
use crate::sequences::{parse_rational, LucasParams, Rational};

/// Default cap on the number of terms of a direct summation.
pub const DEFAULT_MAX_TERMS: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesKind {
    S1,
    S2,
    S3,
    F,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 4] = [SeriesKind::S1, SeriesKind::S2, SeriesKind::S3, SeriesKind::F];
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SeriesKind::S1 => "S1",
            SeriesKind::S2 => "S2",
            SeriesKind::S3 => "S3",
            SeriesKind::F => "F",
        };
        f.write_str(name)
    }
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "S1" => Ok(SeriesKind::S1),
            "S2" => Ok(SeriesKind::S2),
            "S3" => Ok(SeriesKind::S3),
            "F" => Ok(SeriesKind::F),
            _ => Err(Error::Parse(format!("unknown series kind `{s}` (expected S1, S2, S3 or F)"))),
        }
    }
}

/// `a + b√d` with rational `a`, `b` and squarefree `d ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: Rational,
    b: Rational,
    d: u32,
}

impl QuadraticSurd {
    pub fn new(a: Rational, b: Rational, d: u32) -> Result<Self> {
        if d == 0 || !is_squarefree(d) {
            return Err(Error::Domain(format!("radicand {d} is not a positive squarefree integer")));
        }
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: Rational, b: Rational, d: u32) -> Self {
        if d == 1 {
            Self { a: a + b, b: Rational::new(), d: 1 }
        } else if b == 0 {
            Self { a, b, d: 1 }
        } else {
            Self { a, b, d }
        }
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::new(), d: 1 }
    }

    pub fn integer(a: i64) -> Self {
        Self::rational(Rational::from(a))
    }

    /// `(a_num/den) + (b_num/den)·√d`, the shape of every catalog entry.
    pub fn over(a_num: i64, b_num: i64, d: u32, den: u64) -> Self {
        Self::new(Rational::from((a_num, den)), Rational::from((b_num, den)), d).expect("squarefree radicand")
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Exact sign of the value.
    pub fn signum(&self) -> i32 {
        let sa = self.a.cmp0() as i32;
        let sb = self.b.cmp0() as i32;
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² with b²d.
        let a_sq = Rational::from(self.a.square_ref());
        let b_sq_d = Rational::from(self.b.square_ref()) * self.d;
        match a_sq.cmp(&b_sq_d) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<u32> {
        match (self.d, other.d) {
            (x, y) if x == y => Ok(x),
            (1, y) => Ok(y),
            (x, 1) => Ok(x),
            (x, y) => Err(Error::Domain(format!("cannot combine √{x} and √{y} exactly"))),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::canonical(Rational::from(&self.a + &other.a), Rational::from(&self.b + &other.b), d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let a = Rational::from(&self.a * &other.a) + Rational::from(&self.b * &other.b) * d;
        let b = Rational::from(&self.a * &other.b) + Rational::from(&self.b * &other.a);
        Ok(Self::canonical(a, b, d))
    }

    pub fn value(&self, ctx: &PrecisionContext) -> BigReal {
        let bits = ctx.bits();
        let mut v = Float::with_val(bits, &self.a);
        if self.b != 0 {
            v += Float::with_val(bits, self.d).sqrt() * &self.b;
        }
        v
    }
}

fn is_squarefree(d: u32) -> bool {
    let mut p = 2u32;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if *q.denom() == 1 {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            return write_rational(f, &self.a);
        }
        if self.a != 0 {
            write_rational(f, &self.a)?;
            if self.b.cmp0() == std::cmp::Ordering::Greater {
                f.write_str("+")?;
            }
        }
        if self.b == 1 {
        } else if self.b == -1 {
            f.write_str("-")?;
        } else {
            write_rational(f, &self.b)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt{}", self.d)
    }
}

/// Accepts sums of rational and `k*sqrtD` terms, optionally wrapped as
/// `(…)/n`: `2+sqrt3`, `1/2+1/2*sqrt5`, `(5-sqrt5)/2`, `sqrt(2)`, `0.75`.
impl FromStr for QuadraticSurd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('√', "sqrt");
        let bad = |why: &str| Error::Parse(format!("`{s}` is not a quadratic surd: {why}"));
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let (body, divisor) = match compact.strip_prefix('(').and_then(|rest| rest.rsplit_once(")/")) {
            Some((inner, den)) => (inner.to_string(), parse_rational(den).map_err(|_| bad("bad divisor"))?),
            None => (compact.clone(), Rational::from(1)),
        };
        if divisor == 0 {
            return Err(bad("division by zero"));
        }
        let mut a = Rational::new();
        let mut b = Rational::new();
        let mut d = 1u32;
        for term in split_signed_terms(&body) {
            match term.split_once("sqrt") {
                Some((coeff, radicand)) => {
                    let coeff = coeff.trim_end_matches('*');
                    let coeff = match coeff {
                        "" | "+" => Rational::from(1),
                        "-" => Rational::from(-1),
                        c => parse_rational(c).map_err(|_| bad("bad coefficient"))?,
                    };
                    let radicand = radicand.trim_start_matches('(').trim_end_matches(')');
                    let radicand: u32 = radicand.parse().map_err(|_| bad("bad radicand"))?;
                    if d != 1 && radicand != d {
                        return Err(bad("mixed radicands"));
                    }
                    d = radicand;
                    b += coeff;
                }
                None => a += parse_rational(&term).map_err(|_| bad("bad rational term"))?,
            }
        }
        Self::new(a / &divisor, b / &divisor, d)
    }
}

fn split_signed_terms(body: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for c in body.chars() {
        let splits = (c == '+' || c == '-') && !current.is_empty() && !matches!(prev, Some('*' | '/' | '('));
        if splits {
            terms.push(std::mem::take(&mut current));
        }
        current.push(c);
        prev = Some(c);
    }
    if !current.is_empty() {
        terms.push(current);
    }
    terms
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadraticSurd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// An angle in `[0, π]` together with `u = 4 sin²(θ/2)`, exact when known.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaPoint {
    pub theta: RationalAngle,
    #[serde(default, rename = "u", skip_serializing_if = "Option::is_none")]
    pub surd: Option<QuadraticSurd>,
}

impl ThetaPoint {
    pub fn new(theta: RationalAngle, surd: Option<QuadraticSurd>) -> Result<Self> {
        let point = Self { theta, surd };
        point.validate()?;
        Ok(point)
    }

    pub fn from_angle(theta: RationalAngle) -> Result<Self> {
        Self::new(theta, None)
    }

    /// Checks the range of θ and, for an exact `u`, its agreement with `4 sin²(θ/2)`.
    pub fn validate(&self) -> Result<()> {
        if !self.theta.in_upper_half() {
            return Err(Error::Domain(format!("θ = {}π lies outside [0, π]", self.theta)));
        }
        if let Some(surd) = &self.surd {
            let check = PrecisionContext::new(30)?;
            let exact = surd.value(&check);
            let from_angle = u_from_theta(self.theta, &check);
            if Float::with_val(check.bits(), &exact - &from_angle).abs() > check.target_tolerance() {
                return Err(Error::Domain(format!("u = {surd} does not equal 4 sin²(θ/2) at θ = {}π", self.theta)));
            }
        }
        Ok(())
    }

    pub fn u(&self, ctx: &PrecisionContext) -> BigReal {
        match &self.surd {
            Some(surd) => surd.value(ctx),
            None => u_from_theta(self.theta, ctx),
        }
    }
}

fn u_from_theta(theta: RationalAngle, ctx: &PrecisionContext) -> BigReal {
    let half = theta.to_real(ctx) / 2u32;
    half.sin().square() * 4u32
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub params: LucasParams,
    /// Branch `u = α`, the larger root.
    pub upper: ThetaPoint,
    /// Branch `u = β`.
    pub lower: ThetaPoint,
}

/// The four Lucas sequences with their conjugate `u`-branches and angles.
pub fn angle_catalog() -> Vec<CatalogEntry> {
    let point = |p, q, surd| ThetaPoint { theta: RationalAngle::frac(p, q), surd: Some(surd) };
    vec![
        CatalogEntry {
            params: LucasParams::new(3, 1),
            upper: point(3, 5, QuadraticSurd::over(3, 1, 5, 2)),
            lower: point(1, 5, QuadraticSurd::over(3, -1, 5, 2)),
        },
        CatalogEntry {
            params: LucasParams::new(5, 5),
            upper: point(4, 5, QuadraticSurd::over(5, 1, 5, 2)),
            lower: point(2, 5, QuadraticSurd::over(5, -1, 5, 2)),
        },
        CatalogEntry {
            params: LucasParams::new(4, 1),
            upper: point(5, 6, QuadraticSurd::over(2, 1, 3, 1)),
            lower: point(1, 6, QuadraticSurd::over(2, -1, 3, 1)),
        },
        CatalogEntry {
            params: LucasParams::new(4, 2),
            upper: point(3, 4, QuadraticSurd::over(2, 1, 2, 1)),
            lower: point(1, 4, QuadraticSurd::over(2, -1, 2, 1)),
        },
    ]
}

pub fn catalog_entry(params: LucasParams) -> Option<CatalogEntry> {
    angle_catalog().into_iter().find(|e| e.params == params)
}

/// Inverts `u = 4 sin²(θ/2)` on `[0, π]`.
pub fn theta_from_u(u: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if u.is_nan() || *u < 0 || *u > 4 {
        return Err(Error::Domain(format!("u = {} lies outside [0, 4]", u.to_f64())));
    }
    let half_root = Float::with_val(ctx.bits(), u.sqrt_ref()) / 2u32;
    Ok(half_root.asin() * 2u32)
}

#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: BigReal,
    pub tail_bound: BigReal,
    pub roundoff_bound: BigReal,
    pub terms_used: usize,
}

impl SumResult {
    pub fn certified_error(&self) -> BigReal {
        Float::with_val(self.value.prec(), &self.tail_bound + &self.roundoff_bound)
    }

    pub fn estimate(&self) -> Estimate {
        Estimate { value: self.value.clone(), error: self.certified_error() }
    }
}

/// Running state of one summation: `n`, `uⁿ/C(2n,n)`, and the harmonic numbers.
struct TermState {
    kind: SeriesKind,
    u: BigReal,
    n: u64,
    scaled: BigReal,
    h_prev: BigReal,
    h_odd: BigReal,
    window: BigReal,
}

impl TermState {
    fn new(kind: SeriesKind, u: &BigReal, bits: u32) -> Self {
        Self {
            kind,
            u: Float::with_val(bits, u),
            n: 1,
            scaled: Float::with_val(bits, u / 2u32),
            h_prev: Float::new(bits),
            h_odd: Float::with_val(bits, 1),
            window: Float::with_val(bits, 1.5),
        }
    }

    fn term(&self) -> BigReal {
        let bits = self.u.prec();
        let n = self.n;
        let weighted = match self.kind {
            SeriesKind::S1 => return Float::with_val(bits, &self.scaled / n) / n / n,
            SeriesKind::S2 => Float::with_val(bits, &self.scaled * &self.h_prev),
            SeriesKind::S3 => Float::with_val(bits, &self.scaled * &self.h_odd),
            SeriesKind::F => Float::with_val(bits, &self.scaled * &self.window),
        };
        weighted / n / n
    }

    /// Upper bound on `t_{m+1}/t_m` for every `m ≥ n`.
    fn ratio_bound(&self) -> BigReal {
        let bits = self.u.prec();
        let n = self.n;
        let harmonic_growth = match self.kind {
            SeriesKind::S1 | SeriesKind::F => Float::with_val(bits, 1),
            // H_m / H_{m−1} = 1 + 1/(m H_{m−1})
            SeriesKind::S2 => {
                if self.h_prev.is_zero() {
                    return Float::with_val(bits, rug::float::Special::Infinity);
                }
                Float::with_val(bits, &self.h_prev * n).recip() + 1u32
            }
            // H_{2m+1} / H_{2m−1} = 1 + (1/(2m) + 1/(2m+1)) / H_{2m−1}
            SeriesKind::S3 => {
                let step = Float::with_val(bits, 2 * n).recip() + Float::with_val(bits, 2 * n + 1).recip();
                step / &self.h_odd + 1u32
            }
        };
        Float::with_val(bits, &self.u * harmonic_growth) / 4u32
    }

    fn advance(&mut self) {
        let n = self.n;
        self.scaled *= &self.u;
        self.scaled *= n + 1;
        self.scaled /= 2 * (2 * n + 1);
        let bits = self.u.prec();
        let inv = |k: u64| Float::with_val(bits, k).recip();
        self.h_prev += inv(n);
        let even = inv(2 * n);
        self.h_odd += &even;
        self.h_odd += inv(2 * n + 1);
        // Σ_{k=n+1}^{2n+2} 1/k from Σ_{k=n}^{2n} 1/k
        self.window -= inv(n);
        self.window += inv(2 * n + 1);
        self.window += inv(2 * n + 2);
        self.n += 1;
    }
}

fn tail_from(last_term: &BigReal, ratio: &BigReal) -> BigReal {
    let bits = last_term.prec();
    if *ratio >= 1 || ratio.is_nan() {
        return Float::with_val(bits, rug::float::Special::Infinity);
    }
    let slack = Float::with_val(bits, 1) + Float::with_val(bits, Float::i_exp(1, -20));
    Float::with_val(bits, last_term * ratio) / (Float::with_val(bits, 1) - ratio) * slack
}

fn roundoff(value: &BigReal, terms: usize, ctx: &PrecisionContext) -> BigReal {
    Float::with_val(ctx.bits(), value.abs_ref()) * ctx.ulp() * (6 * terms as u64 + 10)
}

fn check_u(kind: SeriesKind, u: &BigReal) -> Result<()> {
    if u.is_nan() || *u < 0 || *u >= 4 {
        return Err(Error::Domain(format!("series {kind} needs 0 <= u < 4, got u = {}", u.to_f64())));
    }
    Ok(())
}

/// Sum until the certified tail drops below `10^(−work_digits)`.
pub fn sum_direct(kind: SeriesKind, u: &BigReal, ctx: &PrecisionContext, max_terms: usize) -> Result<SumResult> {
    check_u(kind, u)?;
    let bits = ctx.bits();
    if u.is_zero() {
        return Ok(SumResult { value: ctx.zero(), tail_bound: ctx.zero(), roundoff_bound: ctx.zero(), terms_used: 0 });
    }
    let eps = ctx.work_tolerance();
    let mut state = TermState::new(kind, u, bits);
    let mut sum = Float::new(bits);
    let mut tail = Float::with_val(bits, rug::float::Special::Infinity);
    for used in 1..=max_terms {
        let term = state.term();
        sum += &term;
        if used >= 2 {
            tail = tail_from(&term, &state.ratio_bound());
            if tail < eps {
                let roundoff_bound = roundoff(&sum, used, ctx);
                return Ok(SumResult { value: sum, tail_bound: tail, roundoff_bound, terms_used: used });
            }
        }
        state.advance();
    }
    Err(Error::NotConverged { terms: max_terms, tail_bound: format_sci(&tail) })
}

/// Exactly `terms` terms, with the tail bound for what was left out.
pub fn sum_partial(kind: SeriesKind, u: &BigReal, ctx: &PrecisionContext, terms: usize) -> Result<SumResult> {
    check_u(kind, u)?;
    let bits = ctx.bits();
    let mut state = TermState::new(kind, u, bits);
    let mut sum = Float::new(bits);
    let mut tail = if u.is_zero() { Float::new(bits) } else { Float::with_val(bits, rug::float::Special::Infinity) };
    for used in 1..=terms {
        let term = state.term();
        sum += &term;
        if used == terms && !u.is_zero() {
            tail = tail_from(&term, &state.ratio_bound());
        }
        state.advance();
    }
    let roundoff_bound = roundoff(&sum, terms, ctx);
    Ok(SumResult { value: sum, tail_bound: tail, roundoff_bound, terms_used: terms })
}

/// `Σ vₙ(A,B)·(H_{2n} − H_{n−1})/(n² C(2n,n))` with the exact integers `vₙ`
/// as weights; a cross-check of the two-branch evaluation.
pub fn sum_lucas_weighted(params: LucasParams, ctx: &PrecisionContext, max_terms: usize) -> Result<SumResult> {
    let bits = ctx.bits();
    let (alpha, beta) = params.roots(ctx)?;
    if beta < 0 || alpha >= 4 {
        return Err(Error::Domain(format!("roots of x² − {}x + {} must lie in [0, 4)", params.a, params.b)));
    }
    let ratio = Float::with_val(bits, &alpha / 4u32);
    let eps = ctx.work_tolerance();
    let one = Float::with_val(bits, 1);
    let mut state = TermState::new(SeriesKind::F, &one, bits);
    let mut lucas = params.iter().skip(1);
    let mut sum = Float::new(bits);
    let mut tail = Float::with_val(bits, rug::float::Special::Infinity);
    for used in 1..=max_terms {
        let v = lucas.next().expect("infinite iterator");
        let term = state.term() * &v;
        sum += &term;
        tail = tail_from(&term, &ratio);
        if tail < eps {
            let roundoff_bound = roundoff(&sum, used, ctx);
            return Ok(SumResult { value: sum, tail_bound: tail, roundoff_bound, terms_used: used });
        }
        state.advance();
    }
    Err(Error::NotConverged { terms: max_terms, tail_bound: format_sci(&tail) })
}

/// Accumulates `Σ cᵢ·xᵢ` together with `Σ |cᵢ|·errᵢ`.
struct Combination {
    value: BigReal,
    error: BigReal,
    magnitude: BigReal,
}

impl Combination {
    fn new(ctx: &PrecisionContext) -> Self {
        Self { value: ctx.zero(), error: ctx.zero(), magnitude: ctx.zero() }
    }

    fn add(&mut self, coeff: &BigReal, est: &Estimate) {
        let bits = self.value.prec();
        let scaled = Float::with_val(bits, coeff * &est.value);
        self.magnitude += scaled.clone().abs();
        self.value += scaled;
        self.error += Float::with_val(bits, coeff.abs_ref()) * &est.error;
    }

    fn finish(self, ctx: &PrecisionContext) -> Estimate {
        let roundoff = self.magnitude * ctx.ulp() * 16u32;
        Estimate { value: self.value, error: self.error + roundoff }
    }
}

/// Clausen closed form of `kind` at `point.theta ∈ (0, π]`.
pub fn closed_form(kind: SeriesKind, point: &ThetaPoint, ctx: &PrecisionContext) -> Result<Estimate> {
    point.validate()?;
    let theta = point.theta;
    if theta.is_zero() {
        return Err(Error::Domain("closed forms need θ > 0 (at u = 0 every series is 0)".into()));
    }
    let bits = ctx.bits();
    let t = theta.to_real(ctx);
    let zeta3 = zeta3_estimate(ctx);
    let cl3 = |a: RationalAngle| clausen(ClausenOrder::Three, a, ctx);
    let cl2 = |a: RationalAngle| clausen(ClausenOrder::Two, a, ctx);
    let c = |x: i32| Float::with_val(bits, x);
    let t_times = |x: i32| Float::with_val(bits, &t * x);
    let log_part = || {
        let t_sq = Float::with_val(bits, t.square_ref());
        let log = Float::with_val(bits, &t / 2u32).sin() * 2u32;
        Estimate::exact(t_sq * log.ln())
    };
    let half = Float::with_val(bits, 0.5);

    let mut acc = Combination::new(ctx);
    match kind {
        SeriesKind::S1 => {
            acc.add(&c(2), &cl3(theta));
            acc.add(&t_times(2), &cl2(theta));
            acc.add(&c(-2), &zeta3);
            acc.add(&c(1), &log_part());
        }
        SeriesKind::S2 => {
            let sup = theta.supplement();
            acc.add(&c(4), &cl3(sup));
            acc.add(&t_times(-2), &cl2(sup));
            acc.add(&c(3), &zeta3);
        }
        SeriesKind::S3 => {
            let sup = theta.supplement();
            acc.add(&c(-2), &cl3(theta));
            acc.add(&c(4), &cl3(sup));
            acc.add(&t_times(-2), &cl2(sup));
            acc.add(&t_times(-1), &cl2(theta));
            acc.add(&c(5), &zeta3);
        }
        SeriesKind::F => {
            acc.add(&c(1), &zeta3);
            acc.add(&c(-1), &cl3(theta));
            acc.add(&half, &log_part());
        }
    }
    Ok(acc.finish(ctx))
}

/// `S3 − S2 + S1/2 − F` evaluated through the closed forms; zero in exact arithmetic.
pub fn combined_identity_residual(point: &ThetaPoint, ctx: &PrecisionContext) -> Result<BigReal> {
    if point.theta.is_zero() || point.theta == RationalAngle::PI {
        return Err(Error::Domain("the combined residual needs θ in (0, π)".into()));
    }
    let bits = ctx.bits();
    let value = |kind| closed_form(kind, point, ctx).map(|e| e.value);
    let mut residual = value(SeriesKind::S3)?;
    residual -= value(SeriesKind::S2)?;
    residual += Float::with_val(bits, value(SeriesKind::S1)? / 2u32);
    residual -= value(SeriesKind::F)?;
    Ok(residual)
}
