//! JSON documents for every input and output type, and serde helpers for
//! big integers. Integers that fit in an `i64` are written as JSON numbers,
//! larger ones as decimal strings; both forms are accepted on input.

pub mod schema;

pub use schema::*;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Wire {
    Small(i64),
    Text(String),
}

fn to_wire(x: &BigInt) -> Wire {
    match x.to_i64() {
        Some(v) => Wire::Small(v),
        None => Wire::Text(x.to_string()),
    }
}

fn from_wire<E: serde::de::Error>(w: Wire) -> Result<BigInt, E> {
    match w {
        Wire::Small(v) => Ok(BigInt::from(v)),
        Wire::Text(s) => s
            .trim()
            .parse()
            .map_err(|_| E::custom(format!("not an integer: `{s}`"))),
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_wire(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_wire(Wire::deserialize(d)?)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_wire))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Wire>::deserialize(d)?
            .into_iter()
            .map(from_wire)
            .collect()
    }
}

pub mod bigint_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            v.iter()
                .map(|row| row.iter().map(to_wire).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<Wire>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(from_wire).collect())
            .collect()
    }
}

/// Serializes a rational as `"p/q"` (or `"p"` for integers).
pub fn rational<S: Serializer>(x: &num_rational::BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn rational_vec<S: Serializer>(
    v: &[num_rational::BigRational],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Converts a JSON value holding an integer (number or string) to a `BigInt`.
pub fn bigint_from_json(v: &serde_json::Value) -> crate::Result<BigInt> {
    let w: Wire = serde_json::from_value(v.clone())
        .map_err(|e| crate::Error::Parse(format!("expected an integer: {e}")))?;
    from_wire::<serde_json::Error>(w).map_err(|e| crate::Error::Parse(e.to_string()))
}

pub fn bigint_to_json(x: &BigInt) -> serde_json::Value {
    serde_json::to_value(to_wire(x)).expect("integers serialize")
}
