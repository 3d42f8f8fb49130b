//! Exact extended nonnegative rationals: the value lattice `[0, ∞]`.
//!
//! Finite values are `Rational64` and every operation is checked. An
//! operation whose result does not fit in 64-bit numerator/denominator
//! panics with `rational overflow` instead of rounding, so a returned value
//! is always exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

pub type Rational = Rational64;

pub(crate) fn r_add(a: Rational, b: Rational) -> Rational {
    a.checked_add(&b).expect("rational overflow")
}

pub(crate) fn r_sub(a: Rational, b: Rational) -> Rational {
    a.checked_sub(&b).expect("rational overflow")
}

pub(crate) fn r_mul(a: Rational, b: Rational) -> Rational {
    a.checked_mul(&b).expect("rational overflow")
}

pub(crate) fn r_div(a: Rational, b: Rational) -> Rational {
    a.checked_div(&b).expect("rational overflow or division by zero")
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// A value of `[0, ∞]`. `Inf` is the lattice top, never a sentinel numeral.
///
/// The derived order puts every finite value below `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtValue {
    Finite(Rational),
    Inf,
}

pub use ExtValue::Inf as INF;

impl ExtValue {
    pub const ZERO: ExtValue = ExtValue::Finite(Rational::new_raw(0, 1));

    /// Wraps a rational, rejecting negatives.
    pub fn finite(r: Rational) -> Result<Self, Error> {
        if r.is_negative() {
            Err(Error::Parse(format!("negative value {r}")))
        } else {
            Ok(ExtValue::Finite(r))
        }
    }

    /// Integer shorthand; panics on negative input.
    pub fn int(n: i64) -> Self {
        assert!(n >= 0, "ExtValue::int({n}) is negative");
        ExtValue::Finite(Rational::from_integer(n))
    }

    /// `numer/denom` shorthand; panics on a negative ratio.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::finite(rat(numer, denom)).expect("negative ratio")
    }

    pub fn is_inf(self) -> bool {
        matches!(self, ExtValue::Inf)
    }

    pub fn is_finite(self) -> bool {
        !self.is_inf()
    }

    pub fn is_zero(self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_zero())
    }

    pub fn as_finite(self) -> Option<Rational> {
        match self {
            ExtValue::Finite(r) => Some(r),
            ExtValue::Inf => None,
        }
    }

    /// Truncated subtraction `(self - rhs) ∨ 0` with `∞ ⊖ y = ∞` for finite
    /// `y` and `x ⊖ ∞ = 0`.
    pub fn tsub(self, rhs: ExtValue) -> ExtValue {
        match (self, rhs) {
            (_, ExtValue::Inf) => ExtValue::ZERO,
            (ExtValue::Inf, ExtValue::Finite(_)) => ExtValue::Inf,
            (ExtValue::Finite(a), ExtValue::Finite(b)) => {
                if a > b {
                    ExtValue::Finite(r_sub(a, b))
                } else {
                    ExtValue::ZERO
                }
            }
        }
    }

    /// `self + r` for a rational shift; the result must stay nonnegative.
    pub fn shift(self, r: Rational) -> ExtValue {
        match self {
            ExtValue::Inf => ExtValue::Inf,
            ExtValue::Finite(a) => {
                let s = r_add(a, r);
                assert!(!s.is_negative(), "shift produced a negative value");
                ExtValue::Finite(s)
            }
        }
    }

    /// Multiplication by a nonnegative rational; `∞ · 0 = 0`.
    pub fn scale(self, r: Rational) -> ExtValue {
        assert!(!r.is_negative(), "negative scale factor");
        match self {
            ExtValue::Inf if r.is_zero() => ExtValue::ZERO,
            ExtValue::Inf => ExtValue::Inf,
            ExtValue::Finite(a) => ExtValue::Finite(r_mul(a, r)),
        }
    }

    /// Symmetric distance `(a ⊖ b) ∨ (b ⊖ a)` of the extended Euclidean line.
    pub fn euclid(self, other: ExtValue) -> ExtValue {
        self.tsub(other).max(other.tsub(self))
    }

    /// Denominator of a finite value in lowest terms; 1 for `Inf`.
    pub fn denom(self) -> i64 {
        match self {
            ExtValue::Finite(r) => *r.denom(),
            ExtValue::Inf => 1,
        }
    }
}

impl Default for ExtValue {
    fn default() -> Self {
        ExtValue::ZERO
    }
}

impl From<Rational> for ExtValue {
    /// Panics on negative input; use [`ExtValue::finite`] for fallible
    /// conversion.
    fn from(r: Rational) -> Self {
        ExtValue::finite(r).expect("negative rational")
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(r_add(a, b)),
            _ => ExtValue::Inf,
        }
    }
}

impl PartialEq<Rational> for ExtValue {
    fn eq(&self, other: &Rational) -> bool {
        matches!(self, ExtValue::Finite(r) if r == other)
    }
}

impl PartialOrd<Rational> for ExtValue {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(match self {
            ExtValue::Finite(r) => r.cmp(other),
            ExtValue::Inf => Ordering::Greater,
        })
    }
}

/// `tsub` as a free function.
pub fn tsub(x: ExtValue, y: ExtValue) -> ExtValue {
    x.tsub(y)
}

/// Least common multiple of the denominators of `values` (finite ones only).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a ExtValue>) -> i64 {
    values.into_iter().fold(1i64, |acc, v| acc.lcm(&v.denom()))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(r) => f.write_str(&format_rational(r)),
            ExtValue::Inf => f.write_str("inf"),
        }
    }
}

/// Parses a signed rational from an integer, `p/q`, or decimal literal.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let t = text.trim();
    let bad = || Error::Parse(text.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let (neg, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if frac_part.is_empty() && int_digits.is_empty() {
            return Err(bad());
        }
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let scale = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
        let int_val: i64 = if int_digits.is_empty() {
            0
        } else {
            int_digits.parse().map_err(|_| bad())?
        };
        let frac_val: i64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let numer = int_val
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        let r = Rational::new(numer, scale);
        return Ok(if neg { -r } else { r });
    }
    let n: i64 = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

impl FromStr for ExtValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "∞" => return Ok(ExtValue::Inf),
            _ => {}
        }
        let r = parse_rational(t)?;
        ExtValue::finite(r).map_err(|_| Error::Parse(s.to_string()))
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct ExtValueVisitor;

impl Visitor<'_> for ExtValueVisitor {
    type Value = ExtValue;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("\"inf\", an integer, a \"p/q\" string, or a decimal")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtValue, E> {
        v.parse().map_err(|e: Error| E::custom(e))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtValue, E> {
        i64::try_from(v)
            .map(ExtValue::int)
            .map_err(|_| E::custom("integer out of range"))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtValue, E> {
        if v < 0 {
            Err(E::custom(format!("negative value {v}")))
        } else {
            Ok(ExtValue::int(v))
        }
    }

    // JSON floats are read through their shortest decimal rendering, so the
    // literal `0.1` becomes exactly 1/10.
    fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtValue, E> {
        if v.is_infinite() && v > 0.0 {
            return Ok(ExtValue::Inf);
        }
        let text = format!("{v}");
        text.parse().map_err(|e: Error| E::custom(e))
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ExtValueVisitor)
    }
}

/// Serde adapter for plain (possibly negative) rationals as strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match v {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(de::Error::custom(format!("expected a rational, got {other}"))),
        };
        parse_rational(&text).map_err(de::Error::custom)
    }
}
