//! Exact integer and rational sequences.

use rug::{Float, Integer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{BigReal, PrecisionContext};

pub use rug::Rational;

/// Parameters of the Lucas sequence `v_n(A, B)`:
/// `v_0 = 2`, `v_1 = A`, `v_{n+1} = A v_n − B v_{n−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LucasParams {
    pub a: i64,
    pub b: i64,
}

impl LucasParams {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn discriminant(&self) -> Integer {
        Integer::from(self.a) * self.a - Integer::from(self.b) * 4
    }

    /// Roots `α ≥ β` of `x² − A x + B`.
    pub fn roots(&self, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
        let disc = self.discriminant();
        if disc < 0 {
            return Err(Error::Domain(format!("v_n({}, {}) has complex characteristic roots", self.a, self.b)));
        }
        let sqrt = Float::with_val(ctx.bits(), &disc).sqrt();
        let alpha = Float::with_val(ctx.bits(), &sqrt + self.a) / 2u32;
        let beta = Float::with_val(ctx.bits(), self.a - sqrt) / 2u32;
        Ok((alpha, beta))
    }

    pub fn iter(&self) -> LucasIter {
        LucasIter { params: *self, current: Integer::from(2), next: Integer::from(self.a) }
    }
}

/// Yields `v_0, v_1, v_2, …`.
#[derive(Clone, Debug)]
pub struct LucasIter {
    params: LucasParams,
    current: Integer,
    next: Integer,
}

impl Iterator for LucasIter {
    type Item = Integer;

    fn next(&mut self) -> Option<Integer> {
        let following = Integer::from(&self.next * self.params.a) - Integer::from(&self.current * self.params.b);
        let out = std::mem::replace(&mut self.current, std::mem::replace(&mut self.next, following));
        Some(out)
    }
}

pub fn lucas_v(params: LucasParams, n: u64) -> Integer {
    params.iter().nth(n as usize).expect("infinite iterator")
}

/// Lucas numbers `L_0 = 2`, `L_1 = 1`, `L_{n+1} = L_n + L_{n−1}`.
pub fn lucas_number(n: u64) -> Integer {
    let (mut prev, mut cur) = (Integer::from(2), Integer::from(1));
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = Integer::from(&prev + &cur);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Exact `H_n`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> Rational {
    Harmonic::new().nth(n as usize).expect("infinite iterator")
}

/// Yields `H_0, H_1, H_2, …` exactly.
#[derive(Clone, Debug, Default)]
pub struct Harmonic {
    index: u64,
    value: Rational,
}

impl Harmonic {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for Harmonic {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let out = self.value.clone();
        self.index += 1;
        self.value += Rational::from((1, self.index));
        Some(out)
    }
}

/// `C(2n, n)` via `C(2n+2, n+1) = C(2n, n)·2(2n+1)/(n+1)`.
pub fn central_binomial(n: u64) -> Integer {
    CentralBinomial::new().nth(n as usize).expect("infinite iterator")
}

/// Yields `C(0,0), C(2,1), C(4,2), …`.
#[derive(Clone, Debug)]
pub struct CentralBinomial {
    n: u64,
    value: Integer,
}

impl CentralBinomial {
    pub fn new() -> Self {
        Self { n: 0, value: Integer::from(1) }
    }
}

impl Default for CentralBinomial {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CentralBinomial {
    type Item = Integer;

    fn next(&mut self) -> Option<Integer> {
        let out = self.value.clone();
        self.value *= 2 * (2 * self.n + 1);
        self.n += 1;
        self.value /= self.n;
        Some(out)
    }
}

/// Parses `p`, `p/q`, or a terminating decimal such as `-0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not a rational number"));
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_value: Integer =
            if int_digits.is_empty() { Integer::new() } else { int_digits.parse().map_err(|_| bad())? };
        let frac_value: Integer = frac_part.parse().map_err(|_| bad())?;
        let scale = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
        let magnitude = Rational::from((int_value * &scale + frac_value, scale));
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let value: Rational = text.parse().map_err(|_| bad())?;
    Ok(value)
}
