//! Canonical JSON encoding of exact series.
//!
//! ```text
//! {"lattice": D, "truncation": "p/q", "terms": [[n, "a/b"], ...]}
//! ```
//!
//! Terms are sorted by numerator; rationals are written in lowest terms as
//! decimal digit strings, with the `/b` omitted when `b = 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Exponent;
use crate::{Rational, Series};

#[derive(Debug, Serialize, Deserialize)]
struct Encoded {
    lattice: i64,
    truncation: String,
    terms: Vec<(i64, String)>,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Decode(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn parse_exponent(s: &str) -> Result<Exponent> {
    let r = parse_rational(s)?;
    let conv = |x: &BigInt| {
        i64::try_from(x).map_err(|_| Error::Decode(format!("exponent `{s}` out of range")))
    };
    Ok(Exponent::new(conv(r.numer())?, conv(r.denom())?))
}

fn encode(s: &Series) -> Encoded {
    Encoded {
        lattice: s.lattice(),
        truncation: s.truncation().to_string(),
        terms: s.raw_terms().map(|(n, c)| (n, c.to_string())).collect(),
    }
}

pub fn to_value(s: &Series) -> serde_json::Value {
    serde_json::to_value(encode(s)).expect("series encoding is infallible")
}

/// Compact canonical encoding.
pub fn to_string(s: &Series) -> String {
    serde_json::to_string(&encode(s)).expect("series encoding is infallible")
}

pub fn from_value(v: serde_json::Value) -> Result<Series> {
    let e: Encoded = serde_json::from_value(v).map_err(|e| Error::Decode(e.to_string()))?;
    decode(e)
}

pub fn from_str(text: &str) -> Result<Series> {
    let e: Encoded = serde_json::from_str(text).map_err(|e| Error::Decode(e.to_string()))?;
    decode(e)
}

fn decode(e: Encoded) -> Result<Series> {
    if e.lattice < 1 {
        return Err(Error::Decode(format!(
            "lattice {} must be positive",
            e.lattice
        )));
    }
    let truncation = parse_exponent(&e.truncation)?;
    let max = Series::zero(e.lattice, truncation).max_numerator();
    let mut terms = BTreeMap::new();
    let mut last = None;
    for (n, c) in e.terms {
        if last.is_some_and(|l| n <= l) {
            return Err(Error::Decode("terms must be strictly ascending".into()));
        }
        last = Some(n);
        if n > max {
            return Err(Error::Decode(format!(
                "term {n}/{} lies beyond the truncation",
                e.lattice
            )));
        }
        let c = parse_rational(&c)?;
        if c.is_zero() {
            return Err(Error::Decode(format!("zero coefficient stored at {n}")));
        }
        terms.insert(n, c);
    }
    Ok(Series::from_raw(e.lattice, truncation, terms))
}
