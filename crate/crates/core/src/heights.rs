//! Local and global heights on ℙᴺ(ℚ).
//!
//! All heights use one fixed representative: for a form F of degree e and a
//! normalized point x,
//!
//! - λ_{F,∞}(x) = e·log max|xᵢ| − log|F(x)|
//! - λ_{F,p}(x) = v_p(F(x))·log p
//!
//! and a subscheme with generators F₁…F_r takes the minimum over generators at
//! each place. Summing over primes, the finite part of h_Y(x) is the log of
//! gcd(F₁(x), …, F_r(x)), which is carried as an exact integer.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{factor, log_abs, log_big, strip_primes, vp, Budget, LogReal};
use crate::projective::{Form, ProjPoint, Subscheme};

/// A place of ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Infinity,
    Prime(BigUint),
}

impl Place {
    pub fn prime(p: u64) -> Place {
        Place::Prime(BigUint::from(p))
    }
}

/// h_Y(x) split into its archimedean part and an exact finite part log M.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalHeight {
    pub arch: LogReal,
    #[serde(with = "decimal")]
    pub finite_mult: BigUint,
    pub total: LogReal,
}

impl GlobalHeight {
    fn new(arch: LogReal, finite_mult: BigUint) -> GlobalHeight {
        let total = arch + log_big(&finite_mult).expect("finite part is positive");
        GlobalHeight {
            arch,
            finite_mult,
            total,
        }
    }

    /// log M.
    pub fn finite(&self) -> LogReal {
        log_big(&self.finite_mult).expect("finite part is positive")
    }
}

/// A global height, or the explicit marker for a point on Y.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetHeight {
    Finite(GlobalHeight),
    Infinite,
}

impl TargetHeight {
    pub fn finite(&self) -> Option<&GlobalHeight> {
        match self {
            TargetHeight::Finite(h) => Some(h),
            TargetHeight::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TargetHeight::Infinite)
    }
}

/// λ_{F,p}(x) = weight · log p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFiniteHeight {
    pub prime: BigUint,
    pub weight: u64,
}

impl LocalFiniteHeight {
    pub fn value(&self) -> LogReal {
        log_big(&self.prime).expect("prime is positive") * self.weight as f64
    }
}

/// log max |xᵢ|.
pub fn naive_height(x: &ProjPoint) -> LogReal {
    log_abs(&x.max_abs()).expect("normalized point has a nonzero coordinate")
}

fn nonzero_value(f: &Form, x: &ProjPoint) -> Result<BigInt> {
    let v = f.eval(x)?;
    if v.is_zero() {
        return Err(Error::OnSupport);
    }
    Ok(v)
}

fn arch_local(f: &Form, x: &ProjPoint, value: &BigInt) -> LogReal {
    naive_height(x) * f.degree() as f64 - log_abs(value).expect("nonzero value")
}

pub fn local_finite_height(f: &Form, x: &ProjPoint, p: &BigUint) -> Result<LocalFiniteHeight> {
    let v = nonzero_value(f, x)?;
    Ok(LocalFiniteHeight {
        prime: p.clone(),
        weight: vp(&v, p)?,
    })
}

/// λ_{F,v}(x) for a single form.
pub fn local_height_form(f: &Form, x: &ProjPoint, place: &Place) -> Result<LogReal> {
    let v = nonzero_value(f, x)?;
    Ok(match place {
        Place::Infinity => arch_local(f, x, &v),
        Place::Prime(p) => {
            LocalFiniteHeight {
                prime: p.clone(),
                weight: vp(&v, p)?,
            }
            .value()
        }
    })
}

/// λ_{Y,v}(x) = min over generators that do not vanish at x.
pub fn subscheme_local_height(y: &Subscheme, x: &ProjPoint, place: &Place) -> Result<LogReal> {
    let mut best: Option<LogReal> = None;
    for g in y.generators() {
        match local_height_form(g, x, place) {
            Ok(h) => best = Some(best.map_or(h, |b| b.min(h))),
            Err(Error::OnSupport) => {}
            Err(e) => return Err(e),
        }
    }
    best.ok_or(Error::OnSupport)
}

/// h_Y(x) with exact finite part gcd(F₁(x), …, F_r(x)).
pub fn subscheme_global_height(y: &Subscheme, x: &ProjPoint) -> Result<GlobalHeight> {
    let mut arch: Option<LogReal> = None;
    let mut g = BigUint::zero();
    for gen in y.generators() {
        let v = gen.eval(x)?;
        if v.is_zero() {
            continue;
        }
        let a = arch_local(gen, x, &v);
        arch = Some(arch.map_or(a, |b| b.min(a)));
        g = g.gcd(v.magnitude());
    }
    match arch {
        Some(a) => Ok(GlobalHeight::new(a, g)),
        None => Err(Error::InfiniteHeight),
    }
}

/// Same as [`subscheme_global_height`] but with the infinite case as a value.
pub fn target_height(y: &Subscheme, x: &ProjPoint) -> Result<TargetHeight> {
    match subscheme_global_height(y, x) {
        Ok(h) => Ok(TargetHeight::Finite(h)),
        Err(Error::InfiniteHeight) => Ok(TargetHeight::Infinite),
        Err(e) => Err(e),
    }
}

/// N⁽¹⁾_S(Y, x): primes outside S where x meets Y, and Σ log p over them.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedCount {
    pub primes: Vec<BigUint>,
    pub value: LogReal,
}

pub fn truncated_counting(
    y: &Subscheme,
    x: &ProjPoint,
    s: &[BigUint],
    budget: &Budget,
) -> Result<TruncatedCount> {
    let h = subscheme_global_height(y, x)?;
    let m = strip_primes(&h.finite_mult, s);
    if m.is_one() {
        return Ok(TruncatedCount {
            primes: Vec::new(),
            value: LogReal::ZERO,
        });
    }
    let fac = factor(&BigInt::from(m), budget)?;
    if !fac.is_complete() {
        return Err(Error::BudgetExceeded);
    }
    let primes: Vec<BigUint> = fac.primes().cloned().collect();
    let value = primes
        .iter()
        .fold(LogReal::ZERO, |acc, p| acc + log_big(p).expect("prime"));
    Ok(TruncatedCount { primes, value })
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
