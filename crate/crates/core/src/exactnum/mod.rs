//! Arbitrary-precision integer utilities.
//!
//! Everything here works on `num-bigint` integers and never converts a large
//! integer to a machine float directly: logarithms are assembled from the bit
//! length and the leading 64 bits.

mod factor;
mod primality;

pub use factor::{factor, small_primes, Factorization};
pub use primality::is_probable_prime;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Effort limits for factorization and iterate composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    /// Primes up to this bound are removed by trial division.
    pub trial_bound: u64,
    /// Total Pollard rho iterations spent on one input.
    pub rho_cap: u64,
    /// Largest iterate degree dⁿ the ℙ¹ multiplicity code will compose.
    pub degree_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            trial_bound: 1_000_000,
            rho_cap: 4_000_000,
            degree_cap: 4096,
        }
    }
}

/// A real logarithm carried as `f64`.
///
/// Values produced by [`log_big`] are within 2⁻⁴⁰ relative error of the exact
/// logarithm. Differences of such values (archimedean local heights) may be
/// negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogReal(pub f64);

impl LogReal {
    pub const ZERO: LogReal = LogReal(0.0);

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn min(self, other: LogReal) -> LogReal {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: LogReal) -> LogReal {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    pub fn scale(self, k: f64) -> LogReal {
        LogReal(self.0 * k)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        LogReal(self.0 + rhs.0)
    }
}

impl Sub for LogReal {
    type Output = LogReal;
    fn sub(self, rhs: LogReal) -> LogReal {
        LogReal(self.0 - rhs.0)
    }
}

impl Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal(-self.0)
    }
}

impl Mul<f64> for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: f64) -> LogReal {
        LogReal(self.0 * rhs)
    }
}

impl Div for LogReal {
    type Output = f64;
    fn div(self, rhs: LogReal) -> f64 {
        self.0 / rhs.0
    }
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn vp(n: &BigInt, p: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if *p < BigUint::from(2u32) {
        return Err(Error::Invalid(format!("{p} is not a prime")));
    }
    let mut m = n.magnitude().clone();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(k);
        }
        m = q;
        k += 1;
    }
}

/// Largest divisor of `n` coprime to `m`, by repeated gcd stripping.
///
/// Every prime shared by `n` and `m` divides `g = gcd(n, m)`, so after the
/// first division it is enough to keep taking gcds against `g`.
pub fn coprime_part(n: &BigUint, m: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut d = n.clone();
    let mut g = d.gcd(m);
    while !g.is_one() {
        d /= &g;
        g = d.gcd(&g);
    }
    d
}

/// Natural logarithm of a positive integer of any size.
pub fn log_big(n: &BigUint) -> Result<LogReal> {
    if n.is_zero() {
        return Err(Error::NonPositive);
    }
    if n.is_one() {
        return Ok(LogReal::ZERO);
    }
    let bits = n.bits();
    if bits <= 64 {
        let v = n.to_u64().expect("fits in u64");
        return Ok(LogReal((v as f64).ln()));
    }
    // n = top · 2^shift with top the leading 64 bits, so top / 2⁶³ ∈ [1, 2).
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("64 leading bits");
    let mantissa = top as f64 / 9_223_372_036_854_775_808.0;
    Ok(LogReal(
        (bits - 1) as f64 * std::f64::consts::LN_2 + mantissa.ln(),
    ))
}

/// `log_big` for signed integers, taking the absolute value.
pub fn log_abs(n: &BigInt) -> Result<LogReal> {
    log_big(n.magnitude())
}

/// Removes every factor of the given primes from `n`.
pub fn strip_primes(n: &BigUint, primes: &[BigUint]) -> BigUint {
    let mut d = n.clone();
    if d.is_zero() {
        return d;
    }
    for p in primes {
        if p <= &BigUint::one() {
            continue;
        }
        loop {
            let (q, r) = d.div_rem(p);
            if !r.is_zero() {
                break;
            }
            d = q;
        }
    }
    d
}
