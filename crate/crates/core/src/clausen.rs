//! Clausen functions Cl₂ and Cl₃ at rational multiples of π.
//!
//! Evaluation goes through the log-sine expansion
//!
//! ```text
//! log(2 sin(t/2)) = log t − Σ_{m≥1} ζ(2m)/m · (t/2π)^(2m)
//! Cl₂(θ) = θ − θ log θ + θ Σ ζ(2m)/(m(2m+1)) · (θ/2π)^(2m)
//! Cl₃(θ) = ζ(3) − ¾θ² + ½θ² log θ − θ² Σ ζ(2m)/(m(2m+1)(2m+2)) · (θ/2π)^(2m)
//! ```
//!
//! after folding θ into `[0, π]`, where the ratio `(θ/2π)²` is at most ¼.

use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::identities::expr::ConstExpr;
use crate::numerics::{self, const_pi, BigReal, Estimate, PrecisionContext};
use crate::sequences::Rational;

/// An exact angle `θ = (p/q)·π`, reduced, with `0 ≤ p/q < 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle {
    p: u64,
    q: u64,
}

impl RationalAngle {
    pub const ZERO: Self = Self { p: 0, q: 1 };
    pub const PI: Self = Self { p: 1, q: 1 };

    /// `(p/q)·π`, reduced modulo 2π.
    pub fn new(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("angle denominator must be positive".into()));
        }
        let period = 2 * i128::from(q);
        let p = i128::from(p).rem_euclid(period) as u64;
        let g = gcd(p, q);
        Ok(Self { p: p / g, q: q / g })
    }

    /// `π/q`-style shorthand used throughout the tables.
    pub fn frac(p: u64, q: u64) -> Self {
        Self::new(p as i64, q).expect("nonzero denominator")
    }

    pub fn numer(&self) -> u64 {
        self.p
    }

    pub fn denom(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }

    /// True when θ lies in `[0, π]`.
    pub fn in_upper_half(&self) -> bool {
        self.p <= self.q
    }

    /// `2π − θ`.
    pub fn reflect(&self) -> Self {
        Self::new(-(self.p as i64), self.q).expect("nonzero denominator")
    }

    /// `π − θ`.
    pub fn supplement(&self) -> Self {
        Self::new(self.q as i64 - self.p as i64, self.q).expect("nonzero denominator")
    }

    pub fn as_rational(&self) -> Rational {
        Rational::from((self.p, self.q))
    }

    pub fn to_real(&self, ctx: &PrecisionContext) -> BigReal {
        const_pi(ctx) * self.p / self.q
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// Parses `p/q` or `p`, meaning `(p/q)·π`.
impl FromStr for RationalAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("`{s}` is not an angle of the form p/q"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        Self::new(p, q)
    }
}

impl Serialize for RationalAngle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalAngle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum ClausenOrder {
    Two,
    Three,
}

impl TryFrom<u32> for ClausenOrder {
    type Error = Error;

    fn try_from(order: u32) -> Result<Self> {
        match order {
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            m => Err(Error::Domain(format!("Clausen order {m} is not supported (only 2 and 3)"))),
        }
    }
}

impl From<ClausenOrder> for u32 {
    fn from(order: ClausenOrder) -> u32 {
        match order {
            ClausenOrder::Two => 2,
            ClausenOrder::Three => 3,
        }
    }
}

pub fn cl2(theta: RationalAngle, ctx: &PrecisionContext) -> BigReal {
    clausen(ClausenOrder::Two, theta, ctx).value
}

pub fn cl3(theta: RationalAngle, ctx: &PrecisionContext) -> BigReal {
    clausen(ClausenOrder::Three, theta, ctx).value
}

/// `Cl_m(θ)` with an absolute error bound (truncation plus roundoff).
pub fn clausen(order: ClausenOrder, theta: RationalAngle, ctx: &PrecisionContext) -> Estimate {
    // Cl₂(2π − θ) = −Cl₂(θ), Cl₃(2π − θ) = Cl₃(θ)
    let (folded, negate) =
        if theta.in_upper_half() { (theta, false) } else { (theta.reflect(), order == ClausenOrder::Two) };
    let mut est = match order {
        ClausenOrder::Two => cl2_folded(folded, ctx),
        ClausenOrder::Three => cl3_folded(folded, ctx),
    };
    if negate {
        est.value = -est.value;
    }
    est
}

/// Partial sum `Σ_{m≥1} ζ(2m) r^m / weight(m)` with its truncation bound.
fn log_sine_tail_sum(r: &BigReal, weight: impl Fn(u64) -> u64, ctx: &PrecisionContext) -> (BigReal, BigReal, u64) {
    let bits = ctx.bits();
    let eps = ctx.work_tolerance();
    let zetas = numerics::zeta_even_cached(ctx);
    let one_minus_r = Float::with_val(bits, 1 - r);
    let mut power = Float::with_val(bits, r);
    let mut sum = Float::new(bits);
    let mut used = 0;
    for (idx, zeta) in zetas.iter().enumerate() {
        let m = idx as u64 + 1;
        sum += Float::with_val(bits, &power * zeta) / weight(m);
        used = m;
        power *= r;
        // Coefficients decrease in m, so the tail is dominated by a geometric series.
        let next_coeff = zetas.get(idx + 1).unwrap_or(zeta);
        let tail = Float::with_val(bits, &power * next_coeff) / weight(m + 1) / &one_minus_r;
        if tail < eps || power.is_zero() {
            return (sum, tail, used);
        }
    }
    let bound = Float::with_val(bits, &power * 2u32) / &one_minus_r;
    (sum, bound, used)
}

fn cl2_folded(theta: RationalAngle, ctx: &PrecisionContext) -> Estimate {
    let bits = ctx.bits();
    if theta.is_zero() {
        return Estimate::exact(ctx.zero());
    }
    let t = theta.to_real(ctx);
    let r = Float::with_val(bits, &t / (const_pi(ctx) * 2u32)).square();
    let (series, tail, used) = log_sine_tail_sum(&r, |m| m * (2 * m + 1), ctx);
    let t_log_t = Float::with_val(bits, &t * t.clone().ln());
    let scaled = Float::with_val(bits, &t * &series);
    let value = Float::with_val(bits, &t - &t_log_t) + &scaled;
    let magnitude = Float::with_val(bits, t.clone().abs() + t_log_t.abs() + scaled.abs());
    let roundoff = magnitude * ctx.ulp() * (used + 16);
    Estimate { value, error: tail * &t + roundoff }
}

fn cl3_folded(theta: RationalAngle, ctx: &PrecisionContext) -> Estimate {
    let bits = ctx.bits();
    let zeta3 = numerics::zeta3_estimate(ctx);
    if theta.is_zero() {
        return zeta3;
    }
    let t = theta.to_real(ctx);
    let t_sq = Float::with_val(bits, t.square_ref());
    let r = Float::with_val(bits, &t / (const_pi(ctx) * 2u32)).square();
    let (series, tail, used) = log_sine_tail_sum(&r, |m| m * (2 * m + 1) * (2 * m + 2), ctx);
    let quad = Float::with_val(bits, &t_sq * 3u32) / 4u32;
    let log_part = Float::with_val(bits, &t_sq * t.ln()) / 2u32;
    let scaled = Float::with_val(bits, &t_sq * &series);
    let value = Float::with_val(bits, &zeta3.value - &quad) + &log_part - &scaled;
    let magnitude = Float::with_val(bits, zeta3.value.clone().abs() + quad + log_part.abs() + scaled.abs());
    let roundoff = magnitude * ctx.ulp() * (used + 16);
    Estimate { value, error: zeta3.error + tail * t_sq + roundoff }
}

/// Exact value of Cl₃ at 0, π/2 and π.
pub fn special_value_cl3(point: RationalAngle) -> Result<ConstExpr> {
    match (point.numer(), point.denom()) {
        (0, _) => Ok(ConstExpr::Zeta3),
        (1, 2) | (3, 2) => Ok(ConstExpr::scaled(Rational::from((-3, 32)), ConstExpr::Zeta3)),
        (1, 1) => Ok(ConstExpr::scaled(Rational::from((-3, 4)), ConstExpr::Zeta3)),
        _ => Err(Error::Domain(format!("no tabulated closed form for Cl3({point}π); only 0, π/2 and π"))),
    }
}

/// `Σ_{j=0}^{r−1} Cl₃((2j+1)π/r)`, which equals `−3ζ(3)/(4r²)`.
pub fn distribution_sum_odd(r: u64, ctx: &PrecisionContext) -> Result<Estimate> {
    if r == 0 {
        return Err(Error::Domain("odd distribution sum needs r >= 1".into()));
    }
    Ok(sum_estimates((0..r).map(|j| RationalAngle::frac(2 * j + 1, r)), ctx))
}

/// `Σ_{j=1}^{r−1} Cl₃(2jπ/r)`, which equals `−(1 − 1/r²)ζ(3)`.
pub fn distribution_sum_even(r: u64, ctx: &PrecisionContext) -> Result<Estimate> {
    if r < 2 {
        return Err(Error::Domain("even distribution sum needs r >= 2".into()));
    }
    Ok(sum_estimates((1..r).map(|j| RationalAngle::frac(2 * j, r)), ctx))
}

fn sum_estimates(angles: impl Iterator<Item = RationalAngle>, ctx: &PrecisionContext) -> Estimate {
    let mut total = Estimate::exact(ctx.zero());
    for theta in angles {
        let est = clausen(ClausenOrder::Three, theta, ctx);
        total.value += est.value;
        total.error += est.error;
    }
    total
}
