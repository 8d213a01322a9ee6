//! Big integers travel as decimal strings so that JSON consumers with 64-bit
//! integers never truncate them.

use num_bigint::BigInt;
use serde::{de::Error, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(D::Error::custom)
}
