//! Serialisation helpers that write big integers as JSON numbers and
//! rationals as `"p/q"` strings.

use std::fmt::Display;
use std::str::FromStr;

use num_rational::BigRational;
use serde::ser::{Serialize, SerializeSeq, Serializer};

struct Num<'a, T>(&'a T);

impl<T: Display> Serialize for Num<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

pub(crate) fn num<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    Num(v).serialize(s)
}

pub(crate) fn nums<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Num(x))?;
    }
    seq.end()
}

pub(crate) fn opt_nums<T: Display, S: Serializer>(v: &Option<Vec<T>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => nums(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn opt_rational<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}
