use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::form::Form;
use super::point::ProjPoint;
use super::resultant::sylvester_resultant;
use crate::error::{Error, Result};

/// f: ℙᴺ → ℙᴺ given by N+1 forms of a common degree d ≥ 1.
///
/// Morphism-ness is only checked exactly on ℙ¹ ([`SelfMap::check_morphism_p1`]).
/// In higher dimension a point where every component vanishes surfaces as
/// [`Error::IndeterminatePoint`] during iteration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfMap {
    components: Vec<Form>,
}

impl SelfMap {
    pub fn new(components: Vec<Form>) -> Result<SelfMap> {
        let n = components.len();
        if n < 2 {
            return Err(Error::Invalid("a self-map needs at least two components".into()));
        }
        let d = components[0].degree();
        if d == 0 {
            return Err(Error::Invalid("self-map components must have degree ≥ 1".into()));
        }
        for c in &components {
            if c.num_vars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.num_vars(),
                });
            }
            if c.degree() != d {
                return Err(Error::Invalid(format!(
                    "components have different degrees ({d} and {})",
                    c.degree()
                )));
            }
        }
        Ok(SelfMap { components })
    }

    /// One polynomial text per component; the number of texts fixes N + 1.
    pub fn parse<S: AsRef<str>>(texts: &[S]) -> Result<SelfMap> {
        let n = texts.len();
        let forms = texts
            .iter()
            .map(|t| Form::parse(t.as_ref(), n))
            .collect::<Result<Vec<_>>>()?;
        SelfMap::new(forms)
    }

    pub fn identity(num_vars: usize) -> SelfMap {
        SelfMap::new((0..num_vars).map(|i| Form::var(num_vars, i)).collect())
            .expect("identity map")
    }

    pub fn components(&self) -> &[Form] {
        &self.components
    }

    pub fn num_vars(&self) -> usize {
        self.components.len()
    }

    /// Common degree d, which on ℙᴺ is also the first dynamical degree.
    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    /// Canonical text used for cache keys.
    pub fn canonical_text(&self) -> String {
        self.components
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Component-wise evaluation without normalizing.
    pub fn eval_raw(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        self.components
            .iter()
            .map(|c| c.eval_coords(coords))
            .collect()
    }

    pub fn apply(&self, x: &ProjPoint) -> Result<ProjPoint> {
        self.apply_at(x, 1)
    }

    fn apply_at(&self, x: &ProjPoint, index: usize) -> Result<ProjPoint> {
        let raw = self.eval_raw(x.coords())?;
        if raw.iter().all(Zero::is_zero) {
            return Err(Error::IndeterminatePoint { index });
        }
        ProjPoint::normalize(raw)
    }

    /// `[x, f(x), …, f^{n_max}(x)]`.
    pub fn iterate(&self, x: &ProjPoint, n_max: usize) -> Result<Vec<ProjPoint>> {
        self.orbit(x).take(n_max + 1).collect()
    }

    /// Lazy forward orbit starting with x itself.
    pub fn orbit(&self, x: &ProjPoint) -> Orbit<'_> {
        Orbit {
            map: self,
            next: Some(Ok(x.clone())),
            index: 0,
        }
    }

    /// Exact test on ℙ¹: the two binary forms have no common root iff their
    /// Sylvester resultant is nonzero.
    pub fn check_morphism_p1(&self) -> Result<bool> {
        if self.num_vars() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.num_vars(),
            });
        }
        let a = self.components[0].binary_coefficients()?;
        let b = self.components[1].binary_coefficients()?;
        Ok(!sylvester_resultant(&a, &b).is_zero())
    }
}

impl fmt::Display for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" : ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Iterator over fⁿ(x), n = 0, 1, 2, …; stops after the first error.
pub struct Orbit<'a> {
    map: &'a SelfMap,
    next: Option<Result<ProjPoint>>,
    index: usize,
}

impl Iterator for Orbit<'_> {
    type Item = Result<ProjPoint>;

    fn next(&mut self) -> Option<Result<ProjPoint>> {
        let current = self.next.take()?;
        if let Ok(x) = &current {
            self.index += 1;
            self.next = Some(self.map.apply_at(x, self.index));
        }
        Some(current)
    }
}

/// A closed subscheme Y ⊂ ℙᴺ given by generators of its ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subscheme {
    pub label: String,
    generators: Vec<Form>,
}

impl Subscheme {
    pub fn new(label: impl Into<String>, generators: Vec<Form>) -> Result<Subscheme> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Invalid("subscheme needs at least one generator".into()))?;
        let n = first.num_vars();
        if let Some(bad) = generators.iter().find(|g| g.num_vars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.num_vars(),
            });
        }
        Ok(Subscheme {
            label: label.into(),
            generators,
        })
    }

    pub fn parse<S: AsRef<str>>(label: &str, texts: &[S], num_vars: usize) -> Result<Subscheme> {
        let gens = texts
            .iter()
            .map(|t| Form::parse(t.as_ref(), num_vars))
            .collect::<Result<Vec<_>>>()?;
        Subscheme::new(label, gens)
    }

    pub fn generators(&self) -> &[Form] {
        &self.generators
    }

    pub fn num_vars(&self) -> usize {
        self.generators[0].num_vars()
    }

    /// Whether every generator vanishes at x.
    pub fn contains(&self, x: &ProjPoint) -> Result<bool> {
        for g in &self.generators {
            if !g.eval(x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
