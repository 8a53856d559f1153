//! Primitive prime divisors along an orbit.
//!
//! With the fixed local-height representative, λ_{D,p}(fⁿx) > 0 exactly when
//! p divides F(fⁿx) on normalized coordinates. A prime outside S is primitive
//! at step n if it divides F(fⁿx) but none of F(f^m x), m < n.
//!
//! Existence is decided without factoring: the primitive part of F(fⁿx) is
//! its coprime part against the support of all earlier values, with the
//! primes of S stripped. The support is tracked by an accumulator that only
//! ever absorbs coprime parts, so it stays gcd-reduced.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{coprime_part, factor, log_big, strip_primes, Budget, Factorization, LogReal};
use crate::projective::{Form, ProjPoint, SelfMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Factorization,
    CoprimePart,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Factorization => "factorization",
            Method::CoprimePart => "coprime-part",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimitivePrimes {
    /// (prime, v_p(F(fⁿx))) for each primitive prime.
    Known(Vec<(BigUint, u32)>),
    /// Only existence was computed, or factorization ran out of budget.
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PpdReport {
    pub n: usize,
    pub exists: bool,
    pub primitive_primes: PrimitivePrimes,
    /// B_n = Σ v_p · log p over the primitive primes.
    pub b_value: LogReal,
    pub method: Method,
    /// F(fⁿx) itself.
    pub value: BigInt,
    pub factorization: Option<Factorization>,
}

/// Incremental primitivity test over a sequence of values F(f⁰x), F(f¹x), ….
#[derive(Debug, Clone)]
pub struct PpdTracker {
    excluded: Vec<BigUint>,
    support: BigUint,
    budget: Option<Budget>,
    n: usize,
}

impl PpdTracker {
    /// `budget = Some(..)` switches on factorization of every value.
    pub fn new(excluded: &[BigUint], budget: Option<Budget>) -> PpdTracker {
        PpdTracker {
            excluded: excluded.to_vec(),
            support: BigUint::one(),
            budget,
            n: 0,
        }
    }

    pub fn observe(&mut self, value: BigInt) -> Result<PpdReport> {
        if value.is_zero() {
            return Err(Error::OnSupport);
        }
        let n = self.n;
        let fresh = coprime_part(value.magnitude(), &self.support);
        let primitive_part = strip_primes(&fresh, &self.excluded);
        let b_value = log_big(&primitive_part)?;
        let coprime_exists = !primitive_part.is_one();

        let (exists, primitive_primes, factorization, method) = match &self.budget {
            None => (coprime_exists, PrimitivePrimes::Unknown, None, Method::CoprimePart),
            Some(budget) => {
                let fac = factor(&value, budget)?;
                if fac.is_complete() {
                    let primes: Vec<(BigUint, u32)> = fac
                        .factors
                        .iter()
                        .filter(|(p, _)| !self.excluded.contains(p))
                        .filter(|(p, _)| !(&self.support % p).is_zero())
                        .cloned()
                        .collect();
                    (!primes.is_empty(), PrimitivePrimes::Known(primes), Some(fac), Method::Factorization)
                } else {
                    (coprime_exists, PrimitivePrimes::Unknown, Some(fac), Method::Factorization)
                }
            }
        };

        self.support *= fresh;
        self.n += 1;
        Ok(PpdReport {
            n,
            exists,
            primitive_primes,
            b_value,
            method,
            value,
            factorization,
        })
    }
}

fn form_values<'a>(
    f: &'a SelfMap,
    x: &ProjPoint,
    form: &'a Form,
    n_max: usize,
) -> impl Iterator<Item = Result<BigInt>> + 'a {
    f.orbit(x)
        .take(n_max + 1)
        .map(move |p| p.and_then(|p| form.eval(&p)))
}

/// Streams one report per step n = 0…n_max into `sink`.
pub fn for_each_ppd<F>(
    f: &SelfMap,
    x: &ProjPoint,
    form: &Form,
    excluded: &[BigUint],
    n_max: usize,
    budget: Option<Budget>,
    mut sink: F,
) -> Result<()>
where
    F: FnMut(&PpdReport) -> Result<()>,
{
    let mut tracker = PpdTracker::new(excluded, budget);
    for v in form_values(f, x, form, n_max) {
        let report = tracker.observe(v?)?;
        sink(&report)?;
    }
    Ok(())
}

/// (n, whether fⁿ(x) has a primitive prime divisor outside S) for n = 0…n_max.
pub fn ppd_exists(
    f: &SelfMap,
    x: &ProjPoint,
    form: &Form,
    excluded: &[BigUint],
    n_max: usize,
) -> Result<Vec<(usize, bool)>> {
    let mut out = Vec::with_capacity(n_max + 1);
    for_each_ppd(f, x, form, excluded, n_max, None, |r| {
        out.push((r.n, r.exists));
        Ok(())
    })?;
    Ok(out)
}

/// Full reports with factorizations and primitive primes listed.
pub fn ppd_primes(
    f: &SelfMap,
    x: &ProjPoint,
    form: &Form,
    excluded: &[BigUint],
    n_max: usize,
    budget: &Budget,
) -> Result<Vec<PpdReport>> {
    let mut out = Vec::with_capacity(n_max + 1);
    for_each_ppd(f, x, form, excluded, n_max, Some(*budget), |r| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok(out)
}

/// B_{n,l} for every n = 0…n_max: Σ v_p(F(fⁿx)) · log p over primes p ∉ S
/// dividing F(fⁿx) but none of F(f^m x), 0 ≤ m ≤ n − l − 1.
pub fn b_sum_series(
    f: &SelfMap,
    x: &ProjPoint,
    form: &Form,
    excluded: &[BigUint],
    n_max: usize,
    window: usize,
) -> Result<Vec<(usize, LogReal)>> {
    let mut support = BigUint::one();
    let mut pending: VecDeque<BigUint> = VecDeque::new();
    let mut out = Vec::with_capacity(n_max + 1);
    for (n, v) in form_values(f, x, form, n_max).enumerate() {
        let v = v?;
        if v.is_zero() {
            return Err(Error::OnSupport);
        }
        let new_part = strip_primes(&coprime_part(v.magnitude(), &support), excluded);
        out.push((n, log_big(&new_part)?));
        // value n joins the excluded window once it is l + 1 steps old
        pending.push_back(v.magnitude().clone());
        if pending.len() > window {
            let old = pending.pop_front().expect("nonempty");
            let fresh = coprime_part(&old, &support);
            support *= fresh;
        }
    }
    Ok(out)
}

/// B_{n,l} at a single step; requires l < n.
pub fn b_sum(
    f: &SelfMap,
    x: &ProjPoint,
    form: &Form,
    excluded: &[BigUint],
    n: usize,
    window: usize,
) -> Result<LogReal> {
    if window >= n {
        return Err(Error::Invalid(format!("window l = {window} must be below n = {n}")));
    }
    let series = b_sum_series(f, x, form, excluded, n, window)?;
    Ok(series.last().expect("n + 1 entries").1)
}
