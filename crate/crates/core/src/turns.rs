use std::fmt;
use std::ops::Add;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// Number of attacks the attacker needs, or `Infinite` when the defender
/// survives forever.
///
/// The derived order puts every `Finite` value below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Turns {
    Finite(u32),
    Infinite,
}

impl Turns {
    pub const ZERO: Turns = Turns::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Turns::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Turns::Finite(t) => Some(t),
            Turns::Infinite => None,
        }
    }

    /// One more turn; `Infinite` absorbs.
    pub fn succ(self) -> Turns {
        self + 1
    }

    /// `self <= Finite(t)`.
    pub fn within(self, t: u32) -> bool {
        self <= Turns::Finite(t)
    }
}

impl Add for Turns {
    type Output = Turns;

    fn add(self, rhs: Turns) -> Turns {
        match (self, rhs) {
            (Turns::Finite(a), Turns::Finite(b)) => Turns::Finite(a + b),
            _ => Turns::Infinite,
        }
    }
}

impl Add<u32> for Turns {
    type Output = Turns;

    fn add(self, rhs: u32) -> Turns {
        self + Turns::Finite(rhs)
    }
}

impl From<u32> for Turns {
    fn from(t: u32) -> Self {
        Turns::Finite(t)
    }
}

impl fmt::Display for Turns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Turns::Finite(t) => write!(f, "{t}"),
            Turns::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Turns {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Turns::Finite(t) => s.serialize_u32(*t),
            Turns::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Turns {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct TurnsVisitor;

        impl Visitor<'_> for TurnsVisitor {
            type Value = Turns;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Turns, E> {
                u32::try_from(v).map(Turns::Finite).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Turns, E> {
                u32::try_from(v).map(Turns::Finite).map_err(E::custom)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Turns, E> {
                if v == "inf" {
                    Ok(Turns::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        d.deserialize_any(TurnsVisitor)
    }
}

/// Sum over a sequence; an empty sum is `Finite(0)`.
impl std::iter::Sum for Turns {
    fn sum<I: Iterator<Item = Turns>>(iter: I) -> Turns {
        iter.fold(Turns::ZERO, |a, b| a + b)
    }
}
