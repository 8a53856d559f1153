use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The first thirteen primes as Miller–Rabin bases are a proof of primality
/// for every n below 3.317·10²⁴.
const DETERMINISTIC_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const RANDOM_ROUNDS: usize = 64;

fn deterministic_limit() -> BigUint {
    // 3317044064679887385961981
    BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap()
}

fn mul_mod64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod64(r, b, m);
        }
        b = mul_mod64(b, b, m);
        e >>= 1;
    }
    r
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &DETERMINISTIC_BASES[..12] {
        let mut x = pow_mod64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, n_minus_1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// Miller–Rabin: deterministic below 3.3·10²⁴, otherwise 64 rounds with
/// bases drawn from a fixed-seed generator so results are reproducible.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &DETERMINISTIC_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    if *n < deterministic_limit() {
        return DETERMINISTIC_BASES
            .iter()
            .all(|&a| strong_probable_prime(n, &n_minus_1, &d, s, &BigUint::from(a)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f72_6269_746c_6162);
    let two = BigUint::from(2u32);
    let hi = n - &one;
    (0..RANDOM_ROUNDS).all(|_| {
        let a = rng.gen_biguint_range(&two, &hi);
        strong_probable_prime(n, &n_minus_1, &d, s, &a)
    })
}
