//! Serde helpers: unbounded integers are written as JSON numbers when they
//! fit in a `u64` and as decimal strings otherwise.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serializer;

pub fn big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn opt_big<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => big(v, s),
        None => s.serialize_none(),
    }
}
