//! Integers extended by `±∞`.

use core::cmp::Ordering;
use core::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `ℤ ∪ {−∞, +∞}`.
///
/// The derived order is the natural one: `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub const ZERO: ExtInt = ExtInt::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// `self + k`; infinities absorb.
    pub fn add_int(self, k: i64) -> ExtInt {
        match self {
            ExtInt::Finite(v) => ExtInt::Finite(v + k),
            other => other,
        }
    }

    /// `self − k`; `∞ − k = ∞` and `−∞ − k = −∞`.
    pub fn sub_int(self, k: i64) -> ExtInt {
        self.add_int(-k)
    }

    /// `self ≥ k` for a plain integer `k`.
    pub fn at_least(self, k: i64) -> bool {
        self >= ExtInt::Finite(k)
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl PartialEq<i64> for ExtInt {
    fn eq(&self, other: &i64) -> bool {
        *self == ExtInt::Finite(*other)
    }
}

impl PartialOrd<i64> for ExtInt {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&ExtInt::Finite(*other)))
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => f.write_str("-∞"),
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::PosInf => f.write_str("∞"),
        }
    }
}

// On the wire: a JSON integer, or one of the strings "inf", "+inf", "-inf".
impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::NegInf => s.serialize_str("-inf"),
            ExtInt::Finite(v) => s.serialize_i64(*v),
            ExtInt::PosInf => s.serialize_str("inf"),
        }
    }
}

struct ExtIntVisitor;

impl<'de> Visitor<'de> for ExtIntVisitor {
    type Value = ExtInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or one of \"inf\", \"+inf\", \"-inf\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtInt, E> {
        Ok(ExtInt::Finite(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtInt, E> {
        i64::try_from(v)
            .map(ExtInt::Finite)
            .map_err(|_| E::custom("integer out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtInt, E> {
        match v {
            "inf" | "+inf" | "∞" | "+∞" => Ok(ExtInt::PosInf),
            "-inf" | "-∞" => Ok(ExtInt::NegInf),
            other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<ExtInt, D::Error> {
        d.deserialize_any(ExtIntVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_arithmetic() {
        assert!(ExtInt::NegInf < ExtInt::Finite(i64::MIN));
        assert!(ExtInt::Finite(i64::MAX) < ExtInt::PosInf);
        assert_eq!(ExtInt::PosInf.sub_int(7), ExtInt::PosInf);
        assert_eq!(ExtInt::NegInf.sub_int(-7), ExtInt::NegInf);
        assert_eq!(ExtInt::Finite(3).sub_int(5), ExtInt::Finite(-2));
        assert_eq!(ExtInt::Finite(3).min(ExtInt::NegInf), ExtInt::NegInf);
        assert!(ExtInt::PosInf.at_least(1_000));
        assert!(!ExtInt::NegInf.at_least(-1_000));
    }
}
