//! Integer relation detection (PSLQ, fixed-point big-integer arithmetic).

use rug::ops::DivRounding;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::identities::{evaluate_lhs, find_identity, ConstExpr};
use crate::numerics::{BigReal, PrecisionContext};
use crate::series::DEFAULT_MAX_TERMS;

/// Extra fixed-point bits on top of the working precision.
const EXTRA_BITS: u32 = 60;
const MAX_STEPS: usize = 20_000;

#[derive(Clone, Debug)]
pub struct RelationResult {
    /// Normalized relation: gcd 1, first nonzero entry positive.
    pub coefficients: Option<Vec<Integer>>,
    /// `|Σ mᵢvᵢ|` rounded up by its roundoff bound; NaN when no relation was found.
    pub residual: BigReal,
    pub iterations: usize,
    /// No relation with Euclidean norm below this exists among the inputs.
    pub exclusion_bound: BigReal,
    /// Fraction of the working digits by which the residual vanishes, in `[0, 1]`.
    pub confidence: f64,
}

impl RelationResult {
    pub fn found(&self) -> bool {
        self.coefficients.is_some()
    }

    pub fn coefficients_i64(&self) -> Option<Vec<i64>> {
        self.coefficients
            .as_ref()
            .map(|c| c.iter().map(|m| m.to_i64().expect("coefficients fit the search budget")).collect())
    }
}

/// Smallest working precision accepted for `n` values and coefficients of `max_coeff_digits` digits.
pub fn required_digits(n: usize, max_coeff_digits: u32) -> u32 {
    15 + n as u32 * (max_coeff_digits + 2)
}

/// Divides by the gcd and makes the first nonzero entry positive.
pub fn normalize(coeffs: &mut [Integer]) {
    let g = coeffs.iter().fold(Integer::new(), |g, c| g.gcd(c));
    if g == 0 {
        return;
    }
    let flip = coeffs.iter().find(|c| **c != 0).is_some_and(|c| *c < 0);
    for c in coeffs.iter_mut() {
        c.div_exact_mut(&g);
        if flip {
            *c = -c.clone();
        }
    }
}

fn to_fixed(x: &BigReal, prec: u32) -> Integer {
    let scaled = Float::with_val(x.prec() + prec, x << prec);
    scaled.to_integer().expect("finite input")
}

fn sqrt_fixed(x: Integer, prec: u32) -> Integer {
    (x << prec).sqrt()
}

fn round_fixed(x: Integer, prec: u32) -> Integer {
    ((x + (Integer::from(1) << (prec - 1))) >> prec) << prec
}

fn div_fixed(num: Integer, den: &Integer, prec: u32) -> Integer {
    (num << prec).div_floor(den)
}

struct Outcome {
    relation: Option<Vec<Integer>>,
    iterations: usize,
    /// `1/max|H|` as a fixed-point integer.
    norm_bound: Option<Integer>,
}

/// Fixed-point PSLQ over `x` (already scaled by `2^prec`). Indices are 1-based as in the usual
/// presentation; row and column 0 are unused.
#[allow(clippy::needless_range_loop)]
fn pslq_fixed(xs: &[Integer], prec: u32, tol: &Integer, max_coeff: &Integer) -> Outcome {
    let n = xs.len();
    let one = Integer::from(1) << prec;
    let mut x = vec![Integer::new()];
    x.extend(xs.iter().cloned());
    let g = sqrt_fixed(Integer::from(4) * &one / 3, prec);

    let mut a = vec![vec![Integer::new(); n + 1]; n + 1];
    let mut b = vec![vec![Integer::new(); n + 1]; n + 1];
    let mut h = vec![vec![Integer::new(); n + 1]; n + 1];
    for i in 1..=n {
        a[i][i] = one.clone();
        b[i][i] = one.clone();
    }

    let mut s = vec![Integer::new(); n + 1];
    for k in 1..=n {
        let mut t = Integer::new();
        for xj in &x[k..=n] {
            t += Integer::from(xj.square_ref()) >> prec;
        }
        s[k] = sqrt_fixed(t, prec);
    }
    let t = s[1].clone();
    let mut y = x.clone();
    for k in 1..=n {
        y[k] = div_fixed(x[k].clone(), &t, prec);
        s[k] = div_fixed(s[k].clone(), &t, prec);
    }
    for i in 1..=n {
        if i < n {
            h[i][i] = if s[i] != 0 { div_fixed(s[i + 1].clone(), &s[i], prec) } else { Integer::new() };
        }
        for j in 1..i {
            let sjj1 = Integer::from(&s[j] * &s[j + 1]);
            h[i][j] = if sjj1 != 0 { div_fixed(-Integer::from(&y[i] * &y[j]), &sjj1, prec) } else { Integer::new() };
        }
    }

    let reduce = |i: usize,
                  j: usize,
                  t: &Integer,
                  y: &mut Vec<Integer>,
                  h: &mut Vec<Vec<Integer>>,
                  a: &mut Vec<Vec<Integer>>,
                  b: &mut Vec<Vec<Integer>>| {
        let d = Integer::from(t * &y[i]) >> prec;
        y[j] += d;
        for k in 1..=j {
            let d = Integer::from(t * &h[j][k]) >> prec;
            h[i][k] -= d;
        }
        for k in 1..=n {
            let d = Integer::from(t * &a[j][k]) >> prec;
            a[i][k] -= d;
            let d = Integer::from(t * &b[k][i]) >> prec;
            b[k][j] += d;
        }
    };

    for i in 2..=n {
        for j in (1..i).rev() {
            if h[j][j] == 0 {
                continue;
            }
            let t = round_fixed(div_fixed(h[i][j].clone(), &h[j][j], prec), prec);
            reduce(i, j, &t, &mut y, &mut h, &mut a, &mut b);
        }
    }

    let mut norm_bound = None;
    for step in 1..=MAX_STEPS {
        let mut m = 1;
        let mut best = Integer::from(-1);
        let mut g_pow = g.clone();
        for i in 1..n {
            let sz = Integer::from(&g_pow * &*h[i][i].as_abs()) >> (prec * (i as u32 - 1));
            if sz > best {
                best = sz;
                m = i;
            }
            g_pow = Integer::from(&g_pow * &g);
        }
        y.swap(m, m + 1);
        h.swap(m, m + 1);
        a.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m + 2 <= n {
            let t0 = sqrt_fixed(
                (Integer::from(h[m][m].square_ref()) + Integer::from(h[m][m + 1].square_ref())) >> prec,
                prec,
            );
            if t0 == 0 {
                break;
            }
            let t1 = div_fixed(h[m][m].clone(), &t0, prec);
            let t2 = div_fixed(h[m][m + 1].clone(), &t0, prec);
            for row in h.iter_mut().take(n + 1).skip(m) {
                let (t3, t4) = (row[m].clone(), row[m + 1].clone());
                row[m] = (Integer::from(&t1 * &t3) + Integer::from(&t2 * &t4)) >> prec;
                row[m + 1] = (Integer::from(&t1 * &t4) - Integer::from(&t2 * &t3)) >> prec;
            }
        }
        for i in m + 1..=n {
            for j in (1..=(i - 1).min(m + 1)).rev() {
                if h[j][j] == 0 {
                    break;
                }
                let t = round_fixed(div_fixed(h[i][j].clone(), &h[j][j], prec), prec);
                reduce(i, j, &t, &mut y, &mut h, &mut a, &mut b);
            }
        }

        for i in 1..=n {
            if *y[i].as_abs() < *tol {
                let vec: Vec<Integer> = (1..=n).map(|j| round_fixed(b[j][i].clone(), prec) >> prec).collect();
                if vec.iter().all(|v| *v.as_abs() < *max_coeff) && vec.iter().any(|v| *v != 0) {
                    return Outcome { relation: Some(vec), iterations: step, norm_bound };
                }
            }
        }

        let recnorm = h.iter().flat_map(|row| row.iter()).map(|v| v.as_abs().clone()).max().unwrap_or_default();
        if recnorm == 0 {
            break;
        }
        let norm = (Integer::from(1) << (2 * prec)).div_floor(&recnorm);
        let done = (Integer::from(&norm >> prec) / 100u32) >= *max_coeff;
        norm_bound = Some(norm);
        if done {
            return Outcome { relation: None, iterations: step, norm_bound };
        }
    }
    Outcome { relation: None, iterations: MAX_STEPS, norm_bound }
}

/// Looks for integers `m`, not all zero, `|mᵢ| < 10^max_coeff_digits`, with
/// `|Σ mᵢvᵢ| < 10^-(work_digits − n·max_coeff_digits)`.
pub fn find_relation(values: &[BigReal], ctx: &PrecisionContext, max_coeff_digits: u32) -> Result<RelationResult> {
    let n = values.len();
    if n < 2 {
        return Err(Error::Domain("a relation needs at least two values".into()));
    }
    if max_coeff_digits == 0 {
        return Err(Error::Domain("max_coeff_digits must be positive".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("relation inputs must be finite".into()));
    }
    let required = required_digits(n, max_coeff_digits);
    if ctx.work_digits() < required {
        return Err(Error::InsufficientPrecision { required, available: ctx.work_digits() });
    }
    let bits = ctx.bits();
    let tol_digits = ctx.work_digits() as i32 - (n as u32 * max_coeff_digits) as i32;
    let tol = ctx.pow10(-tol_digits);
    let max_coeff = Integer::from(Integer::u_pow_u(10, max_coeff_digits));

    let no_relation = |iterations: usize, bound: BigReal| RelationResult {
        coefficients: None,
        residual: Float::with_val(bits, rug::float::Special::Nan),
        iterations,
        exclusion_bound: bound,
        confidence: 0.0,
    };

    let prec = bits + EXTRA_BITS;
    let fixed: Vec<Integer> = values.iter().map(|v| to_fixed(v, prec)).collect();
    let tol_fixed = to_fixed(&tol, prec);
    let zero_at = fixed.iter().position(|v| *v.as_abs() < Integer::from(&tol_fixed / 100u32));
    if let Some(i) = zero_at {
        // A (numerically) zero entry is its own relation.
        let mut coefficients = vec![Integer::new(); n];
        coefficients[i] = Integer::from(1);
        return Ok(certify(coefficients, values, ctx, &tol, 0, Float::with_val(bits, 0)));
    }

    let outcome = pslq_fixed(&fixed, prec, &tol_fixed, &max_coeff);
    let bound = match &outcome.norm_bound {
        Some(norm) => Float::with_val(bits, norm) >> prec,
        None => Float::with_val(bits, 0),
    };
    match outcome.relation {
        Some(mut coefficients) => {
            normalize(&mut coefficients);
            let result = certify(coefficients, values, ctx, &tol, outcome.iterations, bound.clone());
            if result.found() {
                Ok(result)
            } else {
                Ok(no_relation(outcome.iterations, bound))
            }
        }
        None => Ok(no_relation(outcome.iterations, bound)),
    }
}

/// Recomputes the residual of a candidate relation and drops it if it misses the tolerance.
fn certify(
    coefficients: Vec<Integer>,
    values: &[BigReal],
    ctx: &PrecisionContext,
    tol: &BigReal,
    iterations: usize,
    exclusion_bound: BigReal,
) -> RelationResult {
    let bits = ctx.bits();
    let mut sum = ctx.zero();
    let mut magnitude = ctx.zero();
    for (m, v) in coefficients.iter().zip(values) {
        let term = Float::with_val(bits, v * m);
        magnitude += term.clone().abs();
        sum += term;
    }
    let roundoff = magnitude * (2 * values.len() as u32 + 2) * ctx.ulp();
    let residual = sum.abs() + roundoff;
    if residual >= *tol {
        return RelationResult {
            coefficients: None,
            residual: Float::with_val(bits, rug::float::Special::Nan),
            iterations,
            exclusion_bound,
            confidence: 0.0,
        };
    }
    let confidence = if residual.is_zero() {
        1.0
    } else {
        (-residual.clone().log10().to_f64() / ctx.work_digits() as f64).clamp(0.0, 1.0)
    };
    RelationResult { coefficients: Some(coefficients), residual, iterations, exclusion_bound, confidence }
}

/// Searches for a relation among `[LHS of identity, basis…]`.
pub fn rediscover(
    identity_id: &str,
    basis: &[ConstExpr],
    ctx: &PrecisionContext,
    max_coeff_digits: u32,
) -> Result<RelationResult> {
    let spec = find_identity(identity_id)?;
    if basis.is_empty() {
        return Err(Error::Domain("basis must not be empty".into()));
    }
    let lhs = evaluate_lhs(&spec.lhs, ctx, DEFAULT_MAX_TERMS)?;
    let mut values = vec![lhs.value];
    for expr in basis {
        values.push(expr.eval(ctx)?);
    }
    find_relation(&values, ctx, max_coeff_digits)
}
