//! Scalar abstraction shared by every algebraic routine in the crate.
//!
//! Exact modes (`Rational`, `GaussianRational`) never round; float modes
//! (`f32`, `f64` and their complex counterparts) carry comparisons with an
//! explicit tolerance. All matrices, tensors and group-algebra elements are
//! generic over [`Scalar`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;
pub type Complex64 = Complex<f64>;

pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// True for modes whose arithmetic never rounds.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// Embeds a rational; lossy for float modes.
    fn from_rational(r: &Rational) -> Self;

    fn conj(&self) -> Self;

    /// Absolute value (complex modulus) as an `f64`.
    fn modulus(&self) -> f64;

    /// The value as an exact real rational. `None` in float modes or when the
    /// imaginary part is nonzero.
    fn exact_real(&self) -> Option<Rational>;

    fn to_complex64(&self) -> Complex64;

    fn to_json(&self) -> Value;

    fn from_json(value: &Value) -> Result<Self>;

    /// Equality for exact modes, `|a - b| <= tol` for float modes.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.clone() - other.clone()).modulus() <= tol
        }
    }

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }
}

/// Float modes, which admit irrational coefficients (square roots in Young's
/// orthogonal form).
pub trait FloatScalar: Scalar {
    fn from_f64(x: f64) -> Self;
}

/// Conversion from an exact (or float) mode into the matching float mode.
pub trait ToFloat: Scalar {
    type Float: FloatScalar;
    fn to_float(&self) -> Self::Float;
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let r: Rational = t
        .parse()
        .map_err(|_| Error::Parse(format!("`{text}` is not a rational of the form p/q")))?;
    Ok(r)
}

/// Parses `p/q+r/si`, `p/q-r/si`, `r/si`, `i`, or a plain rational.
pub fn parse_gaussian(text: &str) -> Result<GaussianRational> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(&t)?, Rational::zero()));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k)
        .last();
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_text {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
    };
    Ok(Complex::new(parse_rational(re_text)?, im))
}

pub fn format_gaussian(z: &GaussianRational) -> String {
    if z.im.is_negative() {
        format!("{}-{}i", z.re, -z.im.clone())
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn json_integer(value: &Value) -> Option<BigInt> {
    value
        .as_i64()
        .map(BigInt::from)
        .or_else(|| value.as_u64().map(BigInt::from))
}

fn json_rational(value: &Value) -> Result<Rational> {
    match value {
        Value::String(s) => parse_rational(s),
        Value::Number(_) => json_integer(value).map(Rational::from_integer).ok_or_else(|| {
            Error::Parse(format!(
                "exact entry {value} must be an integer or a \"p/q\" string"
            ))
        }),
        other => Err(Error::Parse(format!("expected rational, found {other}"))),
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn modulus(&self) -> f64 {
        rational_to_f64(self).abs()
    }

    fn exact_real(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(value: &Value) -> Result<Self> {
        json_rational(value)
    }
}

impl Scalar for GaussianRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Complex::new(Rational::from_i64(v), Rational::zero())
    }

    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.clone(), Rational::zero())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn modulus(&self) -> f64 {
        rational_to_f64(&self.re).hypot(rational_to_f64(&self.im))
    }

    fn exact_real(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn to_json(&self) -> Value {
        Value::String(format_gaussian(self))
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => parse_gaussian(s),
            _ => Ok(Complex::new(json_rational(value)?, Rational::zero())),
        }
    }
}

macro_rules! impl_real_float {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn from_rational(r: &Rational) -> Self {
                rational_to_f64(r) as $t
            }

            fn conj(&self) -> Self {
                *self
            }

            fn modulus(&self) -> f64 {
                (*self as f64).abs()
            }

            fn exact_real(&self) -> Option<Rational> {
                None
            }

            fn to_complex64(&self) -> Complex64 {
                Complex64::new(*self as f64, 0.0)
            }

            fn to_json(&self) -> Value {
                serde_json::Number::from_f64(*self as f64)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            }

            fn from_json(value: &Value) -> Result<Self> {
                match value {
                    Value::Number(n) => n
                        .as_f64()
                        .map(|x| x as $t)
                        .ok_or_else(|| Error::Parse(format!("bad number {n}"))),
                    Value::String(s) => Ok(rational_to_f64(&parse_rational(s)?) as $t),
                    other => Err(Error::Parse(format!("expected number, found {other}"))),
                }
            }
        }

        impl FloatScalar for $t {
            fn from_f64(x: f64) -> Self {
                x as $t
            }
        }

        impl ToFloat for $t {
            type Float = $t;
            fn to_float(&self) -> $t {
                *self
            }
        }
    };
}

impl_real_float!(f32);
impl_real_float!(f64);

macro_rules! impl_complex_float {
    ($t:ty) => {
        impl Scalar for Complex<$t> {
            const EXACT: bool = false;

            fn from_i64(v: i64) -> Self {
                Complex::new(v as $t, 0.0)
            }

            fn from_rational(r: &Rational) -> Self {
                Complex::new(rational_to_f64(r) as $t, 0.0)
            }

            fn conj(&self) -> Self {
                Complex::conj(self)
            }

            fn modulus(&self) -> f64 {
                (self.re as f64).hypot(self.im as f64)
            }

            fn exact_real(&self) -> Option<Rational> {
                None
            }

            fn to_complex64(&self) -> Complex64 {
                Complex64::new(self.re as f64, self.im as f64)
            }

            fn to_json(&self) -> Value {
                serde_json::json!([self.re as f64, self.im as f64])
            }

            fn from_json(value: &Value) -> Result<Self> {
                match value {
                    Value::Array(parts) if parts.len() == 2 => {
                        let re = <$t as Scalar>::from_json(&parts[0])?;
                        let im = <$t as Scalar>::from_json(&parts[1])?;
                        Ok(Complex::new(re, im))
                    }
                    Value::String(s) => {
                        let z = parse_gaussian(s)?;
                        Ok(Complex::new(
                            rational_to_f64(&z.re) as $t,
                            rational_to_f64(&z.im) as $t,
                        ))
                    }
                    other => Ok(Complex::new(<$t as Scalar>::from_json(other)?, 0.0)),
                }
            }
        }

        impl FloatScalar for Complex<$t> {
            fn from_f64(x: f64) -> Self {
                Complex::new(x as $t, 0.0)
            }
        }

        impl ToFloat for Complex<$t> {
            type Float = Complex<$t>;
            fn to_float(&self) -> Self {
                *self
            }
        }
    };
}

impl_complex_float!(f32);
impl_complex_float!(f64);

impl ToFloat for Rational {
    type Float = f64;
    fn to_float(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl ToFloat for GaussianRational {
    type Float = Complex64;
    fn to_float(&self) -> Complex64 {
        self.to_complex64()
    }
}

/// Shorthand for building exact rationals in code and tests.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn gaussian(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// Serde adapters writing rationals as `p/q` strings.
pub(crate) mod rational_text {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<Z: Serializer>(r: &Rational, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<Z: Serializer>(v: &[Rational], s: Z) -> std::result::Result<Z::Ok, Z::Error> {
            s.collect_seq(v.iter().map(ToString::to_string))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<Z: Serializer>(v: &Option<Rational>, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
            match v {
                Some(r) => s.serialize_some(&r.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
