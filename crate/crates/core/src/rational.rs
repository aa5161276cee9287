//! Exact rational scalars and their text form.
//!
//! Rationals cross every text boundary (CLI arguments, JSONL records,
//! checkpoints) as `"p/q"` strings. Floats are never accepted.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("`{0}` looks like a decimal; write exact fractions such as `1/2`")]
    Decimal(String),
    #[error("`{0}` is not a rational of the form p or p/q")]
    Malformed(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
}

/// Outcome of parsing a rational literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedRational {
    pub value: Rational,
    /// The literal was not in lowest terms and has been reduced.
    pub reduced: bool,
}

fn parse_int(s: &str, whole: &str, signed: bool) -> Result<BigInt, ParseRationalError> {
    let digits = match s.as_bytes().first() {
        Some(b'-') | Some(b'+') if signed => &s[1..],
        _ => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| ParseRationalError::Malformed(whole.to_string()))
}

/// Parses `p` or `p/q` with an optional sign on `p` and `q > 0`.
pub fn parse_rational(s: &str) -> Result<ParsedRational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(ParseRationalError::Decimal(s.to_string()));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (parse_int(n, s, true)?, parse_int(d, s, false)?),
        None => (parse_int(s, s, true)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    let reduced = !num.gcd(&den).is_one();
    Ok(ParsedRational {
        value: Rational::new(num, den),
        reduced,
    })
}

/// Exact `p/q` rendering; integers keep an explicit `/1`.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Display adapter producing the same text as [`to_fraction_string`].
pub struct Frac<'a>(pub &'a Rational);

impl fmt::Display for Frac<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Height `max(|p|, q)` of a rational in lowest terms.
pub fn height(r: &Rational) -> BigInt {
    let p = r.numer().abs();
    let q = r.denom().clone();
    if p > q {
        p
    } else {
        q
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Serde adapters encoding rationals as `"p/q"` strings.
pub mod serde_frac {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&Frac(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s)
            .map(|p| p.value)
            .map_err(de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&to_fraction_string(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| {
                    parse_rational(s)
                        .map(|p| p.value)
                        .map_err(de::Error::custom)
                })
                .collect()
        }
    }

    pub mod triple {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational; 3], s: S) -> Result<S::Ok, S::Error> {
            vec::serialize(v, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rational; 3], D::Error> {
            let v = vec::deserialize(d)?;
            <[Rational; 3]>::try_from(v)
                .map_err(|v| de::Error::invalid_length(v.len(), &"three rationals"))
        }
    }
}
