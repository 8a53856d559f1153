//! Dense univariate polynomials over ℚ and Yun's squarefree decomposition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending degree, no trailing zeros (zero is `[]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> UPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[BigInt]) -> UPoly {
        UPoly::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn from_i64s(coeffs: &[i64]) -> UPoly {
        UPoly::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn one() -> UPoly {
        UPoly::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> UPoly {
        (0..k).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        UPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (UPoly::new(Vec::new()), self.clone());
        }
        let dl = d.lead().clone();
        let dd = d.degree();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

/// Multiplicity k and degree of the squarefree factor A_k in P = c·Π A_k^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityProfile {
    /// (k, deg A_k), descending in k, only nonconstant A_k.
    pub entries: Vec<(u32, usize)>,
}

impl MultiplicityProfile {
    pub fn from_counts(mut counts: Vec<(u32, usize)>) -> MultiplicityProfile {
        counts.sort_by_key(|c| std::cmp::Reverse(c.0));
        let mut entries: Vec<(u32, usize)> = Vec::new();
        for (k, d) in counts {
            if d == 0 {
                continue;
            }
            match entries.last_mut() {
                Some((kk, dd)) if *kk == k => *dd += d,
                _ => entries.push((k, d)),
            }
        }
        MultiplicityProfile { entries }
    }

    /// Largest root multiplicity; 0 for a constant.
    pub fn max_multiplicity(&self) -> u32 {
        self.entries.first().map_or(0, |e| e.0)
    }

    /// Σ k · deg A_k.
    pub fn total_degree(&self) -> usize {
        self.entries.iter().map(|&(k, d)| k as usize * d).sum()
    }
}

/// Squarefree factors [(k, A_k)] of a nonzero polynomial (Yun).
pub fn yun_factors(p: &UPoly) -> Result<Vec<(u32, UPoly)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let g = p.gcd(&dp);
    let mut b = p.exact_div(&g);
    let mut c = dp.exact_div(&g);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut k = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = c.sub(&b.derivative());
        if a.degree() > 0 {
            out.push((k, a));
        }
        k += 1;
    }
    Ok(out)
}

/// Root multiplicities of P over the algebraic closure, read off from its
/// squarefree decomposition.
pub fn yun_squarefree(p: &UPoly) -> Result<MultiplicityProfile> {
    let factors = yun_factors(p)?;
    Ok(MultiplicityProfile::from_counts(
        factors.iter().map(|(k, a)| (*k, a.degree())).collect(),
    ))
}
