//! Exact rational scalars and their text forms.
//!
//! Rationals print as `"p/q"` (or `"p"` when the denominator is one) and
//! parse from that form, from a bare JSON integer, or from an object
//! `{"num": p, "den": q}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn parse_q(text: &str) -> Result<Q> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n).map_err(|_| Error::Format(format!("bad rational {text:?}")))?;
        let d = BigInt::from_str(d).map_err(|_| Error::Format(format!("bad rational {text:?}")))?;
        if d.is_zero() {
            return Err(Error::Format(format!("zero denominator in {text:?}")));
        }
        Ok(Q::new(n, d))
    } else {
        BigInt::from_str(&t)
            .map(Q::from_integer)
            .map_err(|_| Error::Format(format!("bad rational {text:?}")))
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // fall back on component-wise conversion for huge numerators
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Serde adapter for a single rational: `#[serde(with = "crate::rational::serde_q")]`.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

/// Owned rational with the crate's JSON representation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonQ(pub Q);

impl Serialize for JsonQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_q::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for JsonQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        serde_q::deserialize(d).map(JsonQ)
    }
}

struct QVisitor;

impl<'de> Visitor<'de> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as \"p/q\", an integer, or {\"num\": p, \"den\": q}")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
        Ok(qi(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
        Ok(Q::from_integer(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
        parse_q(v).map_err(E::custom)
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Q, A::Error> {
        let mut num: Option<BigInt> = None;
        let mut den: Option<BigInt> = None;
        while let Some(key) = map.next_key::<String>()? {
            let value: serde_json::Value = map.next_value()?;
            let int = match &value {
                serde_json::Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
                serde_json::Value::String(s) => BigInt::from_str(s).ok(),
                _ => None,
            }
            .ok_or_else(|| de::Error::custom(format!("{key} must be an integer")))?;
            match key.as_str() {
                "num" => num = Some(int),
                "den" => den = Some(int),
                other => return Err(de::Error::unknown_field(other, &["num", "den"])),
            }
        }
        let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
        let den = den.unwrap_or_else(BigInt::one);
        if den.is_zero() {
            return Err(de::Error::custom("zero denominator"));
        }
        Ok(Q::new(num, den))
    }
}

/// Element `rational + radical * sqrt(d)` of a real quadratic field; the
/// radicand `d` is carried by the owner (a tableau).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub rational: Q,
    pub radical: Q,
}

impl Surd {
    pub fn rational(x: Q) -> Self {
        Surd { rational: x, radical: Q::zero() }
    }

    pub fn zero() -> Self {
        Self::rational(Q::zero())
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn add(&self, o: &Surd) -> Surd {
        Surd { rational: &self.rational + &o.rational, radical: &self.radical + &o.radical }
    }

    pub fn mul(&self, o: &Surd, radicand: u32) -> Surd {
        let d = qi(radicand as i64);
        Surd {
            rational: &self.rational * &o.rational + &self.radical * &o.radical * d,
            radical: &self.rational * &o.radical + &self.radical * &o.rational,
        }
    }

    pub fn to_f64(&self, radicand: u32) -> f64 {
        to_f64(&self.rational) + to_f64(&self.radical) * (radicand as f64).sqrt()
    }

    /// Text form: `"p/q"`, or `"p/q+r/s*sqrt(d)"` when irrational.
    pub fn format(&self, radicand: u32) -> String {
        if self.is_rational() {
            return self.rational.to_string();
        }
        let sign = if self.radical.is_negative() { '-' } else { '+' };
        format!("{}{}{}*sqrt({})", self.rational, sign, self.radical.abs(), radicand)
    }

    /// Parses the text form; returns the value and the radicand it mentions
    /// (if any).
    pub fn parse(text: &str) -> Result<(Surd, Option<u32>)> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = t.find("sqrt(") else {
            return Ok((Surd::rational(parse_q(&t)?), None));
        };
        let close = t[pos..]
            .find(')')
            .map(|i| i + pos)
            .ok_or_else(|| Error::Format(format!("unclosed sqrt in {text:?}")))?;
        if close + 1 != t.len() {
            return Err(Error::Format(format!("sqrt term must come last in {text:?}")));
        }
        let radicand: u32 = t[pos + 5..close]
            .parse()
            .map_err(|_| Error::Format(format!("bad radicand in {text:?}")))?;
        let head = &t[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split "a+b" / "a-b" / "b" / "-b" at the last sign that is not leading
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-') && !head[..i].ends_with('/'))
            .map(|(i, _)| i);
        let (rat, rad) = match split {
            Some(i) => (parse_q(&head[..i])?, signed_coefficient(&head[i..])?),
            None => (Q::zero(), signed_coefficient(head)?),
        };
        Ok((Surd { rational: rat, radical: rad }, Some(radicand)))
    }
}

fn signed_coefficient(s: &str) -> Result<Q> {
    match s {
        "" | "+" => Ok(Q::one()),
        "-" => Ok(-Q::one()),
        _ => parse_q(s.strip_prefix('+').unwrap_or(s)),
    }
}
