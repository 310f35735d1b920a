//! Precision policy and the fundamental constants.
//!
//! Every computation runs under a [`PrecisionContext`]: the caller asks for
//! `target_digits`, the context adds guard digits, and all intermediate
//! arithmetic happens at `work_digits = target_digits + guard_digits`.
//! Values are MPFR floats (round-to-nearest); rigor comes from the explicit
//! error budgets carried next to the values, not from directed rounding.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};

/// Arbitrary-precision real. The precision it was created with is the
/// working precision of the context that produced it.
pub type BigReal = Float;

pub const MIN_GUARD_DIGITS: u32 = 10;

/// Term count assumed when the caller gives no hint (the default series cap).
pub const DEFAULT_EXPECTED_TERMS: u64 = 2_000_000;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Direct summation of `j^(-2k)` is used while it needs at most this many terms.
const DIRECT_ZETA_MAX_TERMS: u64 = 64;

/// Guard digits covering roundoff accumulated over `expected_terms` additions.
pub fn guard_digits_for(expected_terms: u64) -> u32 {
    MIN_GUARD_DIGITS + (expected_terms.max(1) as f64).log10().ceil() as u32
}

#[derive(Clone)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
    cache: Arc<ConstCache>,
}

/// Read-only memo of constants, filled lazily once per context.
#[derive(Default)]
struct ConstCache {
    zeta3: OnceLock<Estimate>,
    zeta_even: OnceLock<Vec<BigReal>>,
}

impl PrecisionContext {
    pub fn new(target_digits: u32) -> Result<Self> {
        Self::with_guard(target_digits, guard_digits_for(DEFAULT_EXPECTED_TERMS))
    }

    pub fn for_terms(target_digits: u32, expected_terms: u64) -> Result<Self> {
        Self::with_guard(target_digits, guard_digits_for(expected_terms))
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::InvalidPrecision("target_digits must be positive".into()));
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "guard_digits must be at least {MIN_GUARD_DIGITS}, got {guard_digits}"
            )));
        }
        Ok(Self { target_digits, guard_digits, cache: Arc::default() })
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn work_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Binary precision matching `work_digits`.
    pub fn bits(&self) -> u32 {
        (f64::from(self.work_digits()) * LOG2_10).ceil() as u32 + 8
    }

    pub fn real<T>(&self, value: T) -> BigReal
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }

    pub fn zero(&self) -> BigReal {
        Float::new(self.bits())
    }

    /// Unit roundoff at working precision, `2^(1-bits)`.
    pub fn ulp(&self) -> BigReal {
        Float::with_val(self.bits(), Float::i_exp(1, 1 - self.bits() as i32))
    }

    /// `10^(-target_digits)`.
    pub fn target_tolerance(&self) -> BigReal {
        self.pow10(-(self.target_digits as i32))
    }

    /// `10^(-work_digits)`.
    pub fn work_tolerance(&self) -> BigReal {
        self.pow10(-(self.work_digits() as i32))
    }

    pub fn pow10(&self, exponent: i32) -> BigReal {
        Float::with_val(self.bits(), 10).pow(exponent)
    }

    /// Parses a decimal string at working precision.
    pub fn parse_real(&self, text: &str) -> Result<BigReal> {
        let parsed =
            Float::parse(text.trim()).map_err(|e| Error::Parse(format!("`{text}` is not a decimal number: {e}")))?;
        Ok(Float::with_val(self.bits(), parsed))
    }
}

impl fmt::Debug for PrecisionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrecisionContext")
            .field("target_digits", &self.target_digits)
            .field("guard_digits", &self.guard_digits)
            .finish()
    }
}

impl PartialEq for PrecisionContext {
    fn eq(&self, other: &Self) -> bool {
        self.target_digits == other.target_digits && self.guard_digits == other.guard_digits
    }
}

impl Eq for PrecisionContext {}

/// A value together with an absolute error bound.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub value: BigReal,
    pub error: BigReal,
}

impl Estimate {
    pub fn exact(value: BigReal) -> Self {
        let error = Float::new(value.prec());
        Self { value, error }
    }
}

pub fn const_pi(ctx: &PrecisionContext) -> BigReal {
    Float::with_val(ctx.bits(), Constant::Pi)
}

/// ζ(3) from the alternating central-binomial series
/// `ζ(3) = (5/2) Σ (-1)^(n-1) / (n³ C(2n,n))`.
pub fn zeta3(ctx: &PrecisionContext) -> BigReal {
    zeta3_estimate(ctx).value
}

pub fn zeta3_estimate(ctx: &PrecisionContext) -> Estimate {
    ctx.cache.zeta3.get_or_init(|| zeta3_alternating(ctx)).clone()
}

fn zeta3_alternating(ctx: &PrecisionContext) -> Estimate {
    let bits = ctx.bits();
    let eps = ctx.work_tolerance();
    // b = 1 / C(2n, n)
    let mut b = Float::with_val(bits, 0.5);
    let mut sum = Float::new(bits);
    let mut n: u64 = 1;
    let omitted = loop {
        let term = Float::with_val(bits, &b / cube(n));
        if n % 2 == 1 {
            sum += &term;
        } else {
            sum -= &term;
        }
        b *= n + 1;
        b /= 2 * (2 * n + 1);
        n += 1;
        let next = Float::with_val(bits, &b / cube(n));
        if next < eps {
            break next;
        }
    };
    let value = sum * 5u32 / 2u32;
    // Alternating with decreasing terms: truncation error below the first omitted term.
    let roundoff = Float::with_val(bits, &value * ctx.ulp()) * (4 * n + 8);
    let error = omitted * 5u32 / 2u32 + roundoff;
    Estimate { value, error }
}

fn cube(n: u64) -> Integer {
    Integer::from(n).pow(3)
}

/// ζ(3) by Euler–Maclaurin: direct partial sum plus Bernoulli corrections,
/// with `B_2k/(2k)!` expressed through ζ(2k). Independent of the
/// central-binomial route and used to cross-check it.
pub fn zeta3_euler_maclaurin(ctx: &PrecisionContext) -> Estimate {
    let bits = ctx.bits();
    let eps = ctx.work_tolerance();
    let cutoff = u64::from(ctx.work_digits().max(16));

    let mut value = Float::new(bits);
    for n in 1..cutoff {
        value += Float::with_val(bits, cube(n)).recip();
    }
    let big_n = Float::with_val(bits, cutoff);
    value += Float::with_val(bits, big_n.clone().pow(-2i32)) / 2u32;
    value += Float::with_val(bits, big_n.clone().pow(-3i32)) / 2u32;

    // term_k = (-1)^(k+1) (2k+1)! ζ(2k) / ((2πN)^(2k) N²)
    let zetas = zeta_even_cached(ctx);
    let two_pi_n_sq = Float::with_val(bits, const_pi(ctx) * 2u32 * &big_n).square();
    let mut scale = Float::with_val(bits, big_n.pow(-2i32)); // (2k+1)! / ((2πN)^(2k) N²)
    let mut error = Float::with_val(bits, Float::i_exp(1, 0));
    for (idx, zeta) in zetas.iter().enumerate() {
        let k = idx as u64 + 1;
        scale *= (2 * k) * (2 * k + 1);
        scale /= &two_pi_n_sq;
        let term = Float::with_val(bits, &scale * zeta);
        if term < eps {
            error = term;
            break;
        }
        if k % 2 == 1 {
            value += &term;
        } else {
            value -= &term;
        }
    }
    let roundoff = Float::with_val(bits, &value * ctx.ulp()) * (2 * cutoff + 16);
    Estimate { value, error: error + roundoff }
}

/// ζ(2k) for `k ≥ 1`.
pub fn zeta_even(k: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if k == 0 {
        return Err(Error::Domain("zeta_even requires k >= 1".into()));
    }
    Ok(zeta_even_table(k, ctx).pop().expect("table has k entries"))
}

/// `[ζ(2), ζ(4), …, ζ(2·kmax)]`.
pub fn zeta_even_table(kmax: u32, ctx: &PrecisionContext) -> Vec<BigReal> {
    let bits = ctx.bits();
    // Tangent numbers are only needed below the point where direct summation gets cheap.
    let tangent_limit = (3..=kmax).filter(|&k| direct_terms_needed(k, bits) > DIRECT_ZETA_MAX_TERMS).max().unwrap_or(0);
    let tangents = tangent_numbers(tangent_limit as usize);
    (1..=kmax)
        .map(|k| match k {
            1 => Float::with_val(bits, const_pi(ctx).square()) / 6u32,
            2 => Float::with_val(bits, const_pi(ctx).pow(4u32)) / 90u32,
            _ if k <= tangent_limit => zeta_even_tangent(k, &tangents[k as usize], ctx),
            _ => zeta_even_direct(k, ctx),
        })
        .collect()
}

/// Number of terms `J` with `Σ_{j>J} j^(-2k) ≤ J^(1-2k)/(2k-1) < 2^(-bits)`.
pub(crate) fn direct_terms_needed(k: u32, bits: u32) -> u64 {
    let exponent = f64::from(2 * k - 1);
    let log2_j = (f64::from(bits) - exponent.log2()) / exponent;
    if log2_j > 62.0 {
        return u64::MAX;
    }
    (log2_j.exp2().floor() as u64 + 1).max(1)
}

/// ζ(2k) by direct summation; the integral tail bound is below `2^(-bits)`.
pub fn zeta_even_direct(k: u32, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.bits();
    let terms = direct_terms_needed(k, bits);
    assert!(terms <= 1_000_000, "direct summation of zeta({}) needs {terms} terms", 2 * k);
    let exponent = -(2 * k as i32);
    let mut sum = Float::new(bits);
    for j in (1..=terms).rev() {
        sum += Float::with_val(bits, j).pow(exponent);
    }
    sum
}

/// ζ(2k) = k·T_k·π^(2k) / ((2k)!·(4^k − 1)) with `T_k` the k-th tangent number.
fn zeta_even_tangent(k: u32, tangent: &Integer, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.bits();
    let numer = Integer::from(tangent * k);
    let four_k_minus_1 = (Integer::from(1) << (2 * k)) - 1u32;
    let denom = Integer::from(Integer::factorial(2 * k)) * four_k_minus_1;
    let ratio = Float::with_val(bits, &numer) / Float::with_val(bits, &denom);
    ratio * const_pi(ctx).pow(2 * k)
}

/// Tangent numbers `T_1..=T_n` (index 0 unused), integer-only recurrence.
pub(crate) fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let updated = Integer::from(&t[j - 1] * (j - k) as u64) + Integer::from(&t[j] * (j - k + 2) as u64);
            t[j] = updated;
        }
    }
    t
}

/// ζ(2), ζ(4), … long enough for the Clausen expansions at this precision.
pub(crate) fn zeta_even_cached(ctx: &PrecisionContext) -> &[BigReal] {
    ctx.cache.zeta_even.get_or_init(|| zeta_even_table(clausen_table_len(ctx.bits()), ctx))
}

/// The Clausen expansions converge at least like `4^(-m)`.
pub(crate) fn clausen_table_len(bits: u32) -> u32 {
    bits / 2 + 8
}

/// Decimal rendering with `digits` significant digits; fixed notation for
/// moderate magnitudes, scientific otherwise.
pub fn format_decimal(x: &BigReal, digits: u32) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    if x.is_zero() {
        return "0".into();
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp(10, Some(digits.max(1) as usize));
    let exp = exp.unwrap_or(0);
    let sign = if negative { "-" } else { "" };
    let body = if (-5..=21).contains(&exp) {
        if exp <= 0 {
            format!("0.{}{}", "0".repeat((-exp) as usize), mantissa)
        } else {
            let exp = exp as usize;
            if mantissa.len() <= exp {
                format!("{}{}", mantissa, "0".repeat(exp - mantissa.len()))
            } else {
                format!("{}.{}", &mantissa[..exp], &mantissa[exp..])
            }
        }
    } else {
        let (lead, rest) = mantissa.split_at(1);
        if rest.is_empty() {
            format!("{lead}e{}", exp - 1)
        } else {
            format!("{lead}.{rest}e{}", exp - 1)
        }
    };
    format!("{sign}{body}")
}

/// Short scientific rendering for error bounds and gaps.
pub fn format_sci(x: &BigReal) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp(10, Some(3));
    let exp = exp.unwrap_or(0);
    let sign = if negative { "-" } else { "" };
    format!("{sign}{}.{}e{}", &mantissa[..1], &mantissa[1..], exp - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn pi_to_ten_digits() {
        assert_eq!(format_decimal(&const_pi(&ctx(10)), 10), "3.141592654");
    }

    #[test]
    fn sin_pi_vanishes() {
        let c = ctx(30);
        let s = const_pi(&c).sin();
        assert!(s.abs() < c.pow10(-28));
    }

    #[test]
    fn zeta3_twelve_digits() {
        assert_eq!(format_decimal(&zeta3(&ctx(12)), 12), "1.20205690316");
    }

    #[test]
    fn zeta3_routes_agree() {
        let c = ctx(80);
        let a = zeta3_estimate(&c);
        let b = zeta3_euler_maclaurin(&c);
        let gap = Float::with_val(c.bits(), &a.value - &b.value).abs();
        assert!(gap < c.target_tolerance(), "gap {gap}");
        assert!(a.error < c.work_tolerance() * 10u32);
    }

    #[test]
    fn zeta_even_closed_forms() {
        let c = ctx(40);
        let pi = const_pi(&c);
        let z4 = zeta_even(2, &c).unwrap();
        let expected = Float::with_val(c.bits(), pi.pow(4u32)) / 90u32;
        assert!(Float::with_val(c.bits(), z4 - expected).abs() < c.target_tolerance());
        assert!(zeta_even(0, &c).is_err());
    }

    #[test]
    fn zeta40_by_direct_sum() {
        let c = ctx(30);
        let z = zeta_even(20, &c).unwrap();
        // 1 + 2^-40 + 3^-40 + 4^-40, remaining terms below 1e-30
        let oracle = Float::with_val(c.bits(), 1)
            + Float::with_val(c.bits(), 2).pow(-40i32)
            + Float::with_val(c.bits(), 3).pow(-40i32)
            + Float::with_val(c.bits(), 4).pow(-40i32)
            + Float::with_val(c.bits(), 5).pow(-40i32);
        assert!(Float::with_val(c.bits(), &z - oracle).abs() < c.pow10(-30));
        assert_eq!(format_decimal(&z, 20), "1.0000000000009094948");
    }

    #[test]
    fn tangent_and_direct_routes_agree() {
        let c = ctx(30);
        let t = tangent_numbers(30);
        assert_eq!(t[1], 1);
        assert_eq!(t[2], 2);
        assert_eq!(t[3], 16);
        assert_eq!(t[4], 272);
        for k in [12u32, 20, 30] {
            let a = zeta_even_tangent(k, &t[k as usize], &c);
            let b = zeta_even_direct(k, &c);
            let rel = (Float::with_val(c.bits(), &a - &b) / &b).abs();
            assert!(rel < c.pow10(-(c.work_digits() as i32) + 3), "k={k}");
        }
    }

    #[test]
    fn guard_policy() {
        assert_eq!(guard_digits_for(1), 10);
        assert_eq!(guard_digits_for(1000), 13);
        assert_eq!(ctx(50).guard_digits(), 17);
        assert!(PrecisionContext::with_guard(50, 9).is_err());
        assert!(PrecisionContext::with_guard(0, 12).is_err());
    }

    #[test]
    fn formatting() {
        let c = ctx(20);
        assert_eq!(format_decimal(&c.real(0.5), 3), "0.500");
        assert_eq!(format_decimal(&c.real(-1234.5), 6), "-1234.50");
        assert_eq!(format_decimal(&c.pow10(-30), 2), "1.0e-30");
        assert_eq!(format_sci(&c.real(0.048)), "4.80e-2");
    }
}
