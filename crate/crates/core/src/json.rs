//! JSON helpers: integers travel as decimal strings so that values beyond
//! 2^53 survive any consumer.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serializer};

/// Schema tag attached to every top-level JSON document.
pub const SCHEMA: &str = "d4lab/1";

/// `#[serde(with = "crate::json::int")]` for a single `BigInt`.
pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        raw.trim().parse().map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "crate::json::ints")]` for a `Vec<BigInt>`.
pub mod ints {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|x| x.trim().parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A list of integers as a JSON array of decimal strings.
pub fn int_array(v: &[BigInt]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(|x| serde_json::Value::String(x.to_string())).collect())
}

/// Parses a decimal integer, accepting `1e9`-style literals for exact
/// powers of ten multiples.
pub fn parse_int(s: &str) -> crate::Result<BigInt> {
    let s = s.trim().replace('_', "");
    if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let mant: BigInt = mant
            .parse()
            .map_err(|_| crate::Error::Parse(format!("invalid integer `{s}`")))?;
        let exp: u32 = exp
            .parse()
            .map_err(|_| crate::Error::Parse(format!("invalid exponent in `{s}`")))?;
        return Ok(mant * num_traits::pow(BigInt::from(10), exp as usize));
    }
    s.parse()
        .map_err(|_| crate::Error::Parse(format!("invalid integer `{s}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_and_exponent_forms() {
        assert_eq!(parse_int("96").unwrap(), BigInt::from(96));
        assert_eq!(parse_int("1e9").unwrap(), BigInt::from(1_000_000_000));
        assert_eq!(parse_int("146_434_197").unwrap(), BigInt::from(146434197));
        assert!(parse_int("twelve").is_err());
    }

    #[test]
    fn arrays_are_strings() {
        let v = int_array(&[BigInt::from(1), BigInt::from(5)]);
        assert_eq!(v.to_string(), r#"["1","5"]"#);
    }
}
