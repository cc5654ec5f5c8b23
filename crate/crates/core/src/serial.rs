//! Text encodings shared by the library and the CLI.
//!
//! Integers that can grow without bound are written as decimal strings so
//! that values like a 99-digit connection norm survive a JSON round-trip.
//! On input both strings and plain JSON numbers are accepted.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

/// A [`BigInt`] that serializes as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecimalInt(pub BigInt);

impl Serialize for DecimalInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for DecimalInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct DecimalVisitor;

        impl Visitor<'_> for DecimalVisitor {
            type Value = DecimalInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<DecimalInt, E> {
                Ok(DecimalInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<DecimalInt, E> {
                Ok(DecimalInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<DecimalInt, E> {
                v.trim()
                    .parse()
                    .map(DecimalInt)
                    .map_err(|_| E::custom(format!("invalid decimal integer {v:?}")))
            }
        }

        d.deserialize_any(DecimalVisitor)
    }
}

impl From<BigInt> for DecimalInt {
    fn from(v: BigInt) -> Self {
        Self(v)
    }
}

impl From<i64> for DecimalInt {
    fn from(v: i64) -> Self {
        Self(v.into())
    }
}

impl TryFrom<Vec<Vec<DecimalInt>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<DecimalInt>>) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<DecimalInt>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
            .into_iter()
            .map(|r| r.into_iter().map(DecimalInt).collect())
            .collect()
    }
}

pub(crate) fn decimal_vec(v: &[BigInt]) -> Vec<DecimalInt> {
    v.iter().cloned().map(DecimalInt).collect()
}
