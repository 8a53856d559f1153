use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of ℙᴺ(ℚ) as coprime integers with the first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    /// Divides out the content and fixes the sign.
    pub fn normalize(raw: Vec<BigInt>) -> Result<ProjPoint> {
        let g = raw.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(Error::AllZero);
        }
        let first = raw.iter().find(|c| !c.is_zero()).expect("nonzero entry");
        let g = if first.is_negative() { -g } else { g };
        let coords = if g.is_one() {
            raw
        } else {
            raw.into_iter().map(|c| c / &g).collect()
        };
        Ok(ProjPoint { coords })
    }

    pub fn from_i64s(raw: &[i64]) -> Result<ProjPoint> {
        ProjPoint::normalize(raw.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Number of homogeneous coordinates, N + 1.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    /// max |xᵢ|, the exponential of the naive height.
    pub fn max_abs(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("nonempty point")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Accepts `(a:b:c)`, `a:b:c` or `a,b,c`.
impl FromStr for ProjPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<ProjPoint> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(inner);
        let sep = if inner.contains(':') { ':' } else { ',' };
        let coords = inner
            .split(sep)
            .map(|t| {
                let t = t.trim();
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {t:?} in point {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() < 2 {
            return Err(Error::Parse(format!("point {s:?} needs at least two coordinates")));
        }
        ProjPoint::normalize(coords)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(deserializer)?;
        let coords = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ProjPoint::normalize(coords).map_err(serde::de::Error::custom)
    }
}
