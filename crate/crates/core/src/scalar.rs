//! Scalars that stay exact while every input is rational and fall back to
//! binary64 as soon as a float enters an expression.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float(v: f64) -> Self {
        Scalar::Float(v)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(f) => *f,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Exact zero for rationals, `|x| <= tol` for floats.
    pub fn is_zero_tol(&self, tol: f64) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(f) => f.abs() <= tol,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Scalar::Exact(r) if r.is_zero())
    }

    /// Sign of the value, with floats inside `tol` counted as zero.
    pub fn signum_tol(&self, tol: f64) -> Ordering {
        match self {
            Scalar::Exact(r) => r.cmp(&BigRational::zero()),
            Scalar::Float(f) => {
                if f.abs() <= tol {
                    Ordering::Equal
                } else if *f > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    /// Rounds a float to the nearest rational with denominator at most
    /// `max_den` when that rational lies within `tol`.
    pub fn snap(value: f64, max_den: i64, tol: f64) -> Option<Scalar> {
        if !value.is_finite() {
            return None;
        }
        let approx = Ratio::<i64>::approximate_float(value)?;
        let candidate = if *approx.denom() <= max_den {
            approx
        } else {
            // approximate_float aims for the exact binary value; retry with a
            // rounded denominator search.
            (1..=max_den)
                .map(|d| Ratio::new((value * d as f64).round() as i64, d))
                .min_by(|a, b| {
                    let ea = (a.to_f64().unwrap_or(f64::INFINITY) - value).abs();
                    let eb = (b.to_f64().unwrap_or(f64::INFINITY) - value).abs();
                    ea.total_cmp(&eb)
                })?
        };
        let err = (candidate.to_f64()? - value).abs();
        (err <= tol).then(|| {
            Scalar::Exact(BigRational::new(
                BigInt::from(*candidate.numer()),
                BigInt::from(*candidate.denom()),
            ))
        })
    }

    /// Canonical literal: `"p"` or `"p/q"` for rationals, shortest
    /// round-trip decimal for floats.
    pub fn to_literal(&self) -> String {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(f) => format!("{f:?}"),
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => Scalar::Float(float(self.to_f64(), other.to_f64())),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    /// Exact comparison for rationals; floats compare by value.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Float(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Exact(v)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `"p"` or `"p/q"` exactly; anything with a decimal point or
    /// exponent becomes a float.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || Error::Literal(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        if t.contains(['.', 'e', 'E']) || t.eq_ignore_ascii_case("nan") || t.contains("inf") {
            let f: f64 = t.parse().map_err(|_| bad())?;
            if !f.is_finite() {
                return Err(bad());
            }
            return Ok(Scalar::Float(f));
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::Exact(BigRational::new(num, den)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

/// Exact values serialize as `"p/q"` strings, floats as JSON numbers.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(_) => ser.serialize_str(&self.to_literal()),
            Scalar::Float(f) => ser.serialize_f64(*f),
        }
    }
}

/// Accepts `"p/q"` strings and JSON integers as exact values and JSON
/// floats as floats.
impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational literal string like \"-3/2\" or a number")
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar::int(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Scalar, E> {
                Ok(Scalar::Exact(BigRational::from_integer(BigInt::from(v))))
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<Scalar, E> {
                if v.is_finite() {
                    Ok(Scalar::Float(v))
                } else {
                    Err(E::custom("non-finite number"))
                }
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Scalar, E> {
                v.parse().map_err(|_| E::custom(format!("invalid scalar literal {v:?}")))
            }
        }
        de.deserialize_any(Visitor)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $exact:expr, $float:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.binary(rhs, $exact, $float)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b, |a, b| a + b);
forward_binop!(Sub, sub, |a, b| a - b, |a, b| a - b);
forward_binop!(Mul, mul, |a, b| a * b, |a, b| a * b);
forward_binop!(Div, div, |a, b| a / b, |a, b| a / b);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}
