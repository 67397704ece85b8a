//! JSON encoding for big integers: a plain number when it fits in 64 bits,
//! a decimal string otherwise.

use std::fmt::Display;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

struct Num<'a, T>(&'a T);

impl<T: Display> Serialize for Num<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let text = self.0.to_string();
        if let Ok(i) = text.parse::<i64>() {
            s.serialize_i64(i)
        } else if let Ok(u) = text.parse::<u64>() {
            s.serialize_u64(u)
        } else {
            s.serialize_str(&text)
        }
    }
}

pub(crate) fn num<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    Num(v).serialize(s)
}

pub(crate) fn seq<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Num))
}

pub(crate) fn table<T: Display, S: Serializer>(v: &[Vec<T>], s: S) -> Result<S::Ok, S::Error> {
    struct Row<'a, T>(&'a [T]);
    impl<T: Display> Serialize for Row<'_, T> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            seq(self.0, s)
        }
    }
    s.collect_seq(v.iter().map(|r| Row(r)))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Signed(i64),
    Unsigned(u64),
    Text(String),
}

pub(crate) fn int_seq<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    Vec::<Raw>::deserialize(d)?
        .into_iter()
        .map(|r| match r {
            Raw::Signed(i) => Ok(BigInt::from(i)),
            Raw::Unsigned(u) => Ok(BigInt::from(u)),
            Raw::Text(t) => BigInt::from_str(t.trim()).map_err(serde::de::Error::custom),
        })
        .collect()
}
