use std::borrow::Cow;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primality::{is_prime_u64, is_probable_prime};
use super::Budget;
use crate::error::{Error, Result};

const DEFAULT_SIEVE: u32 = 1_000_000;
const BRENT_BATCH: u64 = 128;

/// Prime decomposition `|n| = Π pᵉ · cofactor`.
///
/// `cofactor` is 1 when the budget sufficed; otherwise it is the product of
/// the composites rho could not split, none of which has a prime factor below
/// the trial-division bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(BigUint, u32)>,
    pub cofactor: BigUint,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Multiplies the decomposition back out.
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, e)| acc * p.pow(*e))
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if !self.cofactor.is_one() {
            parts.push(format!("[{}]", self.cofactor));
        }
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join(" * "))
    }
}

fn sieve(bound: u32) -> Vec<u32> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u32);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Primes up to `bound` (capped at 2³²−1).
pub fn small_primes(bound: u64) -> Cow<'static, [u32]> {
    static DEFAULT: OnceLock<Vec<u32>> = OnceLock::new();
    let bound = bound.min(u32::MAX as u64) as u32;
    if bound <= DEFAULT_SIEVE {
        let all = DEFAULT.get_or_init(|| sieve(DEFAULT_SIEVE));
        let end = all.partition_point(|&p| p <= bound);
        Cow::Borrowed(&all[..end])
    } else {
        Cow::Owned(sieve(bound))
    }
}

fn rho_step_u64(x: u64, c: u64, n: u64) -> u64 {
    ((x as u128 * x as u128 + c as u128) % n as u128) as u64
}

/// Brent's cycle-finding variant of Pollard rho on x ↦ x² + c.
fn brent_u64(n: u64, c: u64, remaining: &mut u64) -> Option<u64> {
    let mut y = 2u64;
    let mut x = y;
    let mut ys = y;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = rho_step_u64(y, c, n);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let batch = BRENT_BATCH.min(r - k);
            if *remaining < batch {
                *remaining = 0;
                return None;
            }
            *remaining -= batch;
            for _ in 0..batch {
                y = rho_step_u64(y, c, n);
                q = ((q as u128 * x.abs_diff(y) as u128) % n as u128) as u64;
            }
            g = q.gcd(&n);
            k += batch;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = rho_step_u64(ys, c, n);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &BigUint, c: u64, remaining: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let step = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let batch = BRENT_BATCH.min(r - k);
            if *remaining < batch {
                *remaining = 0;
                return None;
            }
            *remaining -= batch;
            for _ in 0..batch {
                y = step(&y);
                q = (q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Finds a nontrivial divisor of the composite `n`, trying c = 1, 2, 3, …
/// until the iteration budget runs out.
fn split(n: &BigUint, remaining: &mut u64) -> Option<BigUint> {
    let mut c = 1u64;
    while *remaining > 0 {
        let found = match n.to_u64() {
            Some(small) => brent_u64(small, c, remaining).map(BigUint::from),
            None => brent_big(n, c, remaining),
        };
        if found.is_some() {
            return found;
        }
        c += 1;
    }
    None
}

fn prime_check(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => is_probable_prime(n),
    }
}

/// Factors a nonzero integer: trial division up to `budget.trial_bound`, then
/// Miller–Rabin and Brent–Pollard rho within `budget.rho_cap` iterations.
///
/// Deterministic for a fixed budget. Running out of budget leaves the
/// unsplit part in `cofactor` rather than failing.
pub fn factor(n: &BigInt, budget: &Budget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = n.magnitude().clone();
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    let mut cofactor = BigUint::one();
    let primes = small_primes(budget.trial_bound);
    let mut exhausted_small = true;
    for &p in primes.iter() {
        if m.is_one() {
            break;
        }
        let pp = BigUint::from(p);
        if &pp * &pp > m {
            // m is 1 or a prime: no factor ≤ √m remains.
            exhausted_small = false;
            break;
        }
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            found.push((pp, e));
        }
    }
    if !m.is_one() {
        if !exhausted_small {
            found.push((m, 1));
        } else {
            let mut remaining = budget.rho_cap;
            let mut stack = vec![m];
            while let Some(c) = stack.pop() {
                if prime_check(&c) {
                    found.push((c, 1));
                } else if let Some(d) = split(&c, &mut remaining) {
                    let other = &c / &d;
                    stack.push(d);
                    stack.push(other);
                } else {
                    cofactor *= c;
                }
            }
        }
    }
    found.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::with_capacity(found.len());
    for (p, e) in found {
        match factors.last_mut() {
            Some((q, k)) if *q == p => *k += e,
            _ => factors.push((p, e)),
        }
    }
    Ok(Factorization { factors, cofactor })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u128) -> Vec<(u128, u32)> {
        let fac = factor(&BigInt::from(n), &Budget::default()).unwrap();
        assert!(fac.is_complete());
        fac.factors
            .iter()
            .map(|(p, e)| (p.to_u128().unwrap(), *e))
            .collect()
    }

    #[test]
    fn orbit_table_rows() {
        assert_eq!(
            f(34467620586),
            vec![(2, 1), (3, 1), (7, 1), (19, 1), (2371, 1), (18217, 1)]
        );
        assert_eq!(
            f(1732712616628784933309),
            vec![(199, 1), (8707098576024044891, 1)]
        );
        assert_eq!(f(151049), vec![(151049, 1)]);
        assert_eq!(f(1), vec![]);
    }

    #[test]
    fn rho_needed() {
        // two primes above the trial bound
        let p = 1_000_003u128;
        let q = 998_244_353u128;
        assert_eq!(f(p * q), vec![(p, 1), (q, 1)]);
        assert_eq!(f(p * p * q), vec![(p, 2), (q, 1)]);
        let r = 2_305_843_009_213_693_951u128; // 2^61 - 1
        assert_eq!(f(p * r), vec![(p, 1), (r, 1)]);
    }

    #[test]
    fn budget_overflow_leaves_cofactor() {
        let p = (BigUint::one() << 89u32) - 1u32;
        let q = (BigUint::one() << 107u32) - 1u32;
        let n = BigInt::from(&p * &q * 12u32);
        let budget = Budget { rho_cap: 1000, ..Budget::default() };
        let fac = factor(&n, &budget).unwrap();
        assert_eq!(fac.cofactor, &p * &q);
        assert_eq!(fac.product(), *n.magnitude());
        assert_eq!(fac.to_string(), format!("2^2 * 3 * [{}]", &p * &q));
    }

    #[test]
    fn negative_and_zero() {
        let fac = factor(&BigInt::from(-12), &Budget::default()).unwrap();
        assert_eq!(fac.product(), BigUint::from(12u32));
        assert_eq!(factor(&BigInt::from(0), &Budget::default()), Err(Error::ZeroInput));
    }
}
