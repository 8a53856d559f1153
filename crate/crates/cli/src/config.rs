//! JSON experiment configuration.

use std::fmt;
use std::path::PathBuf;

use num_bigint::{BigInt, BigUint, Sign};
use orbitlab_core::{Budget, Error, Form, ProjPoint, SelfMap, Subscheme};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An integer written either as a JSON number or a decimal string; always
/// serialized as a string so large values survive round trips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalInt(pub BigInt);

impl Serialize for DecimalInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for DecimalInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = DecimalInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<DecimalInt, E> {
                Ok(DecimalInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<DecimalInt, E> {
                Ok(DecimalInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<DecimalInt, E> {
                v.trim().parse().map(DecimalInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl From<i64> for DecimalInt {
    fn from(v: i64) -> Self {
        DecimalInt(v.into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub label: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// One polynomial per component, in variables x0…xN.
    pub map: Vec<String>,
    pub point: Vec<DecimalInt>,
    #[serde(default)]
    pub targets: Vec<TargetConfig>,
    /// Finite primes excluded from primitivity and counting (∞ is implicit).
    #[serde(default, rename = "S", alias = "s")]
    pub excluded: Vec<DecimalInt>,
    #[serde(default)]
    pub n_max: usize,
    #[serde(default)]
    pub budget: Budget,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<PathBuf>,
    /// Divisor form for `ppd` and `bsum`; defaults to `x0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    /// Window l for `bsum`.
    #[serde(default)]
    pub window: usize,
    /// Factor every value in `ppd` to list primitive primes.
    #[serde(default)]
    pub factor: bool,
    /// (φ₀, φ₁) for `dml-probe`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<[String; 2]>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<ExperimentConfig, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn build(&self) -> Result<Experiment, Error> {
        let map = SelfMap::parse(&self.map)?;
        let point = ProjPoint::normalize(self.point.iter().map(|c| c.0.clone()).collect())?;
        if point.len() != map.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: map.num_vars(),
                got: point.len(),
            });
        }
        let n = map.num_vars();
        let targets = self
            .targets
            .iter()
            .map(|t| Subscheme::parse(&t.label, &t.generators, n))
            .collect::<Result<Vec<_>, _>>()?;
        let excluded = self
            .excluded
            .iter()
            .map(|p| match p.0.sign() {
                Sign::Plus => Ok(p.0.magnitude().clone()),
                _ => Err(Error::Invalid(format!("excluded prime {} must be positive", p.0))),
            })
            .collect::<Result<Vec<BigUint>, _>>()?;
        let form = Form::parse(self.form.as_deref().unwrap_or("x0"), n)?;
        let phi = match &self.phi {
            Some([a, b]) => Some((Form::parse(a, n)?, Form::parse(b, n)?)),
            None => None,
        };
        Ok(Experiment {
            map,
            point,
            targets,
            excluded,
            n_max: self.n_max,
            budget: self.budget,
            form,
            window: self.window,
            factor: self.factor,
            phi,
            cache: self.cache.clone(),
        })
    }
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub map: SelfMap,
    pub point: ProjPoint,
    pub targets: Vec<Subscheme>,
    pub excluded: Vec<BigUint>,
    pub n_max: usize,
    pub budget: Budget,
    pub form: Form,
    pub window: usize,
    pub factor: bool,
    pub phi: Option<(Form, Form)>,
    pub cache: Option<PathBuf>,
}
