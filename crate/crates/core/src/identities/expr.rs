//! Exact constant expressions over rationals, π, ζ(3), logarithms of
//! quadratic surds and Clausen values at rational multiples of π.
//!
//! JSON form (nested arrays, numbers as strings):
//!
//! ```text
//! ["q", "41/25"]            rational
//! ["pi"]                    π
//! ["zeta3"]                 ζ(3)
//! ["log", "1/2+1/2*sqrt5"]  log of a positive rational or surd
//! ["cl", 3, "3/5"]          Cl₃((3/5)π)
//! ["add", e1, e2, …]        sum
//! ["mul", e1, e2, …]        product
//! ["pow", e, k]             integer power
//! ```

use std::fmt;

use rug::Float;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::clausen::{clausen, ClausenOrder, RationalAngle};
use crate::error::{Error, Result};
use crate::numerics::{const_pi, zeta3_estimate, BigReal, Estimate, PrecisionContext};
use crate::sequences::{parse_rational, Rational};
use crate::series::QuadraticSurd;

#[derive(Clone, Debug, PartialEq)]
pub enum ConstExpr {
    Rational(Rational),
    Pi,
    Zeta3,
    Log(QuadraticSurd),
    Clausen { order: ClausenOrder, theta: RationalAngle },
    Sum(Vec<ConstExpr>),
    Product(Vec<ConstExpr>),
    Pow(Box<ConstExpr>, i32),
}

impl ConstExpr {
    pub fn int(n: i64) -> Self {
        ConstExpr::Rational(Rational::from(n))
    }

    pub fn ratio(numer: i64, denom: u64) -> Self {
        ConstExpr::Rational(Rational::from((numer, denom)))
    }

    pub fn scaled(coeff: Rational, expr: ConstExpr) -> Self {
        ConstExpr::Product(vec![ConstExpr::Rational(coeff), expr])
    }

    pub fn pi_squared() -> Self {
        ConstExpr::Pow(Box::new(ConstExpr::Pi), 2)
    }

    pub fn log_of(arg: QuadraticSurd) -> Self {
        ConstExpr::Log(arg)
    }

    pub fn log_int(n: i64) -> Self {
        ConstExpr::Log(QuadraticSurd::integer(n))
    }

    pub fn cl2(theta: RationalAngle) -> Self {
        ConstExpr::Clausen { order: ClausenOrder::Two, theta }
    }

    pub fn cl3(theta: RationalAngle) -> Self {
        ConstExpr::Clausen { order: ClausenOrder::Three, theta }
    }

    pub fn eval(&self, ctx: &PrecisionContext) -> Result<BigReal> {
        self.evaluate(ctx).map(|e| e.value)
    }

    /// Value with a first-order propagated absolute error bound.
    pub fn evaluate(&self, ctx: &PrecisionContext) -> Result<Estimate> {
        let bits = ctx.bits();
        let ulp = ctx.ulp();
        let rounding = |v: &BigReal| Float::with_val(bits, v.abs_ref()) * &ulp;
        match self {
            ConstExpr::Rational(q) => {
                let value = Float::with_val(bits, q);
                let error = rounding(&value);
                Ok(Estimate { value, error })
            }
            ConstExpr::Pi => {
                let value = const_pi(ctx);
                let error = rounding(&value);
                Ok(Estimate { value, error })
            }
            ConstExpr::Zeta3 => Ok(zeta3_estimate(ctx)),
            ConstExpr::Log(arg) => {
                if arg.signum() <= 0 {
                    return Err(Error::Domain(format!("log of nonpositive value {arg}")));
                }
                let value = arg.value(ctx).ln();
                let error = (Float::with_val(bits, value.abs_ref()) + 4u32) * &ulp;
                Ok(Estimate { value, error })
            }
            ConstExpr::Clausen { order, theta } => Ok(clausen(*order, *theta, ctx)),
            ConstExpr::Sum(terms) => {
                let mut value = ctx.zero();
                let mut error = ctx.zero();
                let mut magnitude = ctx.zero();
                for term in terms {
                    let est = term.evaluate(ctx)?;
                    magnitude += est.value.clone().abs();
                    value += &est.value;
                    error += &est.error;
                }
                error += magnitude * &ulp * terms.len().max(1) as u32;
                Ok(Estimate { value, error })
            }
            ConstExpr::Product(factors) => {
                let mut acc = Estimate::exact(Float::with_val(bits, 1));
                for factor in factors {
                    let est = factor.evaluate(ctx)?;
                    let error = Float::with_val(bits, acc.value.abs_ref()) * &est.error
                        + Float::with_val(bits, est.value.abs_ref()) * &acc.error
                        + Float::with_val(bits, &acc.error * &est.error);
                    acc.value *= &est.value;
                    acc.error = error + rounding(&acc.value);
                }
                Ok(acc)
            }
            ConstExpr::Pow(base, k) => {
                let est = base.evaluate(ctx)?;
                if *k < 0 && est.value.is_zero() {
                    return Err(Error::Domain("negative power of zero".into()));
                }
                let value = Float::with_val(bits, rug::ops::Pow::pow(&est.value, *k));
                let k_abs = k.unsigned_abs();
                // |d(v^k)| ≈ |k| |v|^(k−1) |dv|
                let sensitivity = if est.value.is_zero() {
                    ctx.zero()
                } else {
                    Float::with_val(bits, &value / &est.value).abs() * k_abs
                };
                let error = sensitivity * &est.error + rounding(&value) * (k_abs + 1);
                Ok(Estimate { value, error })
            }
        }
    }

    /// Number of rational coefficient atoms (log arguments not included).
    pub fn rational_atom_count(&self) -> usize {
        match self {
            ConstExpr::Rational(_) => 1,
            ConstExpr::Sum(xs) | ConstExpr::Product(xs) => xs.iter().map(Self::rational_atom_count).sum(),
            ConstExpr::Pow(base, _) => base.rational_atom_count(),
            _ => 0,
        }
    }

    /// Copy with the numerator of the `index`-th rational atom (pre-order) shifted by `delta`.
    pub fn perturb_rational(&self, index: usize, delta: i64) -> Option<ConstExpr> {
        let mut counter = 0;
        let mut out = self.clone();
        out.perturb_walk(index, delta, &mut counter).then_some(out)
    }

    fn perturb_walk(&mut self, index: usize, delta: i64, counter: &mut usize) -> bool {
        match self {
            ConstExpr::Rational(q) => {
                if *counter == index {
                    let shifted = Rational::from((rug::Integer::from(q.numer() + delta), q.denom().clone()));
                    *q = shifted;
                    return true;
                }
                *counter += 1;
                false
            }
            ConstExpr::Sum(xs) | ConstExpr::Product(xs) => xs.iter_mut().any(|x| x.perturb_walk(index, delta, counter)),
            ConstExpr::Pow(base, _) => base.perturb_walk(index, delta, counter),
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ConstExpr::Rational(q) => json!(["q", q.to_string()]),
            ConstExpr::Pi => json!(["pi"]),
            ConstExpr::Zeta3 => json!(["zeta3"]),
            ConstExpr::Log(arg) => json!(["log", arg.to_string()]),
            ConstExpr::Clausen { order, theta } => json!(["cl", u32::from(*order), theta.to_string()]),
            ConstExpr::Sum(xs) => tagged("add", xs),
            ConstExpr::Product(xs) => tagged("mul", xs),
            ConstExpr::Pow(base, k) => json!(["pow", base.to_json(), k]),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad expression {value}: {why}"));
        let items = value.as_array().ok_or_else(|| bad("expected an array"))?;
        let (tag, args) = items.split_first().ok_or_else(|| bad("empty array"))?;
        let tag = tag.as_str().ok_or_else(|| bad("tag must be a string"))?;
        let text_arg = |i: usize| args.get(i).and_then(Value::as_str).ok_or_else(|| bad("missing string argument"));
        match tag {
            "q" => Ok(ConstExpr::Rational(parse_rational(text_arg(0)?)?)),
            "pi" => Ok(ConstExpr::Pi),
            "zeta3" => Ok(ConstExpr::Zeta3),
            "log" => Ok(ConstExpr::Log(text_arg(0)?.parse()?)),
            "cl" => {
                let order = args.first().and_then(Value::as_u64).ok_or_else(|| bad("missing Clausen order"))?;
                let order = ClausenOrder::try_from(order as u32)?;
                Ok(ConstExpr::Clausen { order, theta: text_arg(1)?.parse()? })
            }
            "add" | "mul" => {
                let children = args.iter().map(Self::from_json).collect::<Result<Vec<_>>>()?;
                Ok(if tag == "add" { ConstExpr::Sum(children) } else { ConstExpr::Product(children) })
            }
            "pow" => {
                let base = Self::from_json(args.first().ok_or_else(|| bad("missing base"))?)?;
                let k = args.get(1).and_then(Value::as_i64).ok_or_else(|| bad("missing exponent"))?;
                let k = i32::try_from(k).map_err(|_| bad("exponent out of range"))?;
                Ok(ConstExpr::Pow(Box::new(base), k))
            }
            other => Err(bad(&format!("unknown tag `{other}`"))),
        }
    }

    fn is_composite(&self) -> bool {
        matches!(self, ConstExpr::Sum(_) | ConstExpr::Product(_))
    }
}

fn tagged(tag: &str, children: &[ConstExpr]) -> Value {
    let mut items = vec![Value::from(tag)];
    items.extend(children.iter().map(ConstExpr::to_json));
    Value::Array(items)
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstExpr::Rational(q) => write!(f, "{q}"),
            ConstExpr::Pi => f.write_str("π"),
            ConstExpr::Zeta3 => f.write_str("ζ(3)"),
            ConstExpr::Log(arg) => write!(f, "log({arg})"),
            ConstExpr::Clausen { order, theta } => write!(f, "Cl{}({theta}·π)", u32::from(*order)),
            ConstExpr::Sum(terms) => {
                for (i, term) in terms.iter().enumerate() {
                    let rendered = term.to_string();
                    match (i, rendered.strip_prefix('-')) {
                        (0, _) => f.write_str(&rendered)?,
                        (_, Some(rest)) => write!(f, " - {rest}")?,
                        (_, None) => write!(f, " + {rendered}")?,
                    }
                }
                Ok(())
            }
            ConstExpr::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("·")?;
                    }
                    if matches!(factor, ConstExpr::Sum(_)) {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
            ConstExpr::Pow(base, k) => {
                if base.is_composite() {
                    write!(f, "({base})^{k}")
                } else {
                    write!(f, "{base}^{k}")
                }
            }
        }
    }
}

impl Serialize for ConstExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ConstExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        ConstExpr::from_json(&value).map_err(serde::de::Error::custom)
    }
}
