use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of `(1/2)·Z`, stored as its numerator over 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const ONE_HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    /// The half-integer `n / 2`.
    pub const fn from_twice(n: i64) -> Self {
        Half(n)
    }

    pub const fn from_int(n: i64) -> Self {
        Half(2 * n)
    }

    /// Numerator over 2.
    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, when there is one.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_int() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl FromStr for Half {
    type Err = Error;

    /// Accepts `n`, `p/2` and decimals ending in `.5` or `.0`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not a half-integer"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(Half::from_int(num)),
                "2" => Ok(Half(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.starts_with('-');
            let whole: i64 = if int == "-" || int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac = frac.trim_end_matches('0');
            let extra = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let twice = 2 * whole + if negative { -extra } else { extra };
            return Ok(Half(twice));
        }
        s.parse::<i64>().map(Half::from_int).map_err(|_| bad())
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_int() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Half {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct HalfVisitor;

        impl Visitor<'_> for HalfVisitor {
            type Value = Half;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string \"p/2\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Half, E> {
                Ok(Half::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Half, E> {
                i64::try_from(v).map(Half::from_int).map_err(|_| E::custom("integer out of range"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Half, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(HalfVisitor)
    }
}
