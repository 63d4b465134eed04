//! Serde helpers that keep machine reports exact and byte-stable.

use num_bigint::BigUint;
use serde::Serializer;

/// Serialize a big integer as a decimal string so no consumer is tempted
/// to round it through a float.
pub fn biguint_as_string<S: Serializer>(value: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&value.to_string())
}

/// Serialize a map of big-integer counts with the counts as decimal strings.
pub fn biguint_map_as_strings<S: Serializer>(
    map: &std::collections::BTreeMap<String, BigUint>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    ser.collect_map(map.iter().map(|(k, v)| (k, v.to_string())))
}

/// Serialize a digit sequence as one compact string, e.g. `"011011"`.
pub fn digits_as_string<S: Serializer>(
    digits: &[crate::digits::Digit],
    ser: S,
) -> Result<S::Ok, S::Error> {
    let text: String = digits.iter().map(|d| d.to_string()).collect();
    ser.serialize_str(&text)
}
