use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::{add_into, parse_polynomial, Terms};
use super::point::ProjPoint;
use crate::error::{Error, Result};

/// A nonzero integer homogeneous polynomial, stored as a sparse term map
/// from exponent vectors to coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Form {
    num_vars: usize,
    degree: u32,
    terms: Terms,
}

impl Form {
    pub fn new(num_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Result<Form> {
        let mut map = Terms::new();
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    got: e.len(),
                });
            }
            add_into(&mut map, e, c);
        }
        Form::from_terms(num_vars, map)
    }

    fn from_terms(num_vars: usize, terms: Terms) -> Result<Form> {
        let mut degrees = terms.keys().map(|e| e.iter().sum::<u32>());
        let degree = degrees
            .next()
            .ok_or_else(|| Error::Invalid("form is identically zero".into()))?;
        if degrees.any(|d| d != degree) {
            return Err(Error::Invalid("polynomial is not homogeneous".into()));
        }
        Ok(Form {
            num_vars,
            degree,
            terms,
        })
    }

    /// Parses an ASCII polynomial in `x0 … x{num_vars-1}`.
    pub fn parse(text: &str, num_vars: usize) -> Result<Form> {
        let terms = parse_polynomial(text, num_vars)?;
        Form::from_terms(num_vars, terms)
            .map_err(|e| Error::Parse(format!("{text:?}: {e}")))
    }

    /// The coordinate form xᵢ.
    pub fn var(num_vars: usize, i: usize) -> Form {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Form::new(num_vars, [(e, BigInt::one())]).expect("coordinate form")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// (number of terms) × max |coefficient|, so |F(x)| ≤ C·max|xᵢ|^deg.
    pub fn coefficient_bound(&self) -> BigUint {
        let max = self
            .terms
            .values()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap_or_default();
        max * self.terms.len()
    }

    /// Evaluates on raw integer coordinates.
    pub fn eval_coords(&self, coords: &[BigInt]) -> Result<BigInt> {
        if coords.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: coords.len(),
            });
        }
        // powers[i][k] = coords[i]^k, only as high as some term needs
        let mut max_exp = vec![0u32; self.num_vars];
        for e in self.terms.keys() {
            for (m, &k) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(k);
            }
        }
        let powers: Vec<Vec<BigInt>> = coords
            .iter()
            .zip(&max_exp)
            .map(|(c, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                v.push(BigInt::one());
                for k in 1..=m as usize {
                    let next = &v[k - 1] * c;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut sum = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// F evaluated on the normalized representative of `x`.
    pub fn eval(&self, x: &ProjPoint) -> Result<BigInt> {
        self.eval_coords(x.coords())
    }

    /// Dense coefficients of a binary form, `[c₀, …, c_d]` for s^{d−i} tⁱ.
    pub fn binary_coefficients(&self) -> Result<Vec<BigInt>> {
        if self.num_vars != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.num_vars,
            });
        }
        let d = self.degree as usize;
        let mut out = vec![BigInt::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e[1] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Inverse of [`Form::binary_coefficients`].
    pub fn from_binary_coefficients(coeffs: &[BigInt]) -> Result<Form> {
        let d = coeffs.len().saturating_sub(1) as u32;
        Form::new(
            2,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![d - i as u32, i as u32], c.clone())),
        )
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(mag.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{x}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Serialized as `{"num_vars": n, "text": "..."}`.
#[derive(Serialize, Deserialize)]
struct FormRepr {
    num_vars: usize,
    text: String,
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            num_vars: self.num_vars,
            text: self.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = FormRepr::deserialize(deserializer)?;
        Form::parse(&r.text, r.num_vars).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::from_i64s(v).unwrap()
    }

    #[test]
    fn evaluation() {
        let x0 = Form::parse("x0", 3).unwrap();
        assert_eq!(x0.eval(&pt(&[14, 2, 11])).unwrap(), BigInt::from(14));
        let q = Form::parse("x0^2+x1^2+x2^2", 3).unwrap();
        assert_eq!(q.eval(&pt(&[1, 1, 1])).unwrap(), BigInt::from(3));
        let conic = Form::parse("x0*x1 - x2^2", 3).unwrap();
        assert_eq!(conic.eval(&pt(&[1, 1, 1])).unwrap(), BigInt::zero());
        assert!(matches!(
            conic.eval(&pt(&[1, 1])),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn homogeneity_enforced() {
        assert!(Form::parse("x0^2 + x1", 2).is_err());
        assert!(Form::parse("x0 - x0", 2).is_err());
        assert_eq!(Form::parse("3", 2).unwrap().degree(), 0);
    }

    #[test]
    fn display_round_trips() {
        for text in ["x0^2 + x1^2 + x2^2", "x1*x2", "x0^2 + x1*x2", "-2*x0*x1 + 7*x2^2", "x0 - x2"] {
            let f = Form::parse(text, 3).unwrap();
            let again = Form::parse(&f.to_string(), 3).unwrap();
            assert_eq!(f, again, "{text} -> {f}");
        }
        assert_eq!(Form::parse("x1^2 - x0^2", 2).unwrap().to_string(), "-x0^2 + x1^2");
    }

    #[test]
    fn binary_dense_form() {
        let f = Form::parse("x0^2 - x1^2", 2).unwrap();
        let c = f.binary_coefficients().unwrap();
        assert_eq!(c, vec![BigInt::from(1), BigInt::zero(), BigInt::from(-1)]);
        assert_eq!(Form::from_binary_coefficients(&c).unwrap(), f);
    }

    #[test]
    fn coefficient_bound() {
        let f = Form::parse("x0^2 - 5*x1*x2 + x2^2", 3).unwrap();
        assert_eq!(f.coefficient_bound(), BigUint::from(15u32));
    }
}
