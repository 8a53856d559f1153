use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use orbitlab_core::mult1::{
    backward_sup_mult, binary_profile, e_minus_series, e_plus_rational, fiber_form, iterate_multiplicity,
    ram_index, yun_factors, MultiplicityProfile, P1Iterates, UPoly,
};
use orbitlab_core::{ProjPoint, SelfMap};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const P: u64 = (1 << 61) - 1;
const CAP: u64 = 1 << 12;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of a by b over 𝔽_P, ascending coefficients.
fn rem(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let inv = powmod(*b.last().unwrap(), P - 2);
    while a.len() >= b.len() {
        let q = mulmod(*a.last().unwrap(), inv);
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + P - mulmod(q, *c)) % P;
        }
        a = trim(a);
    }
    a
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    a
}

fn derivative(a: &[u64]) -> Vec<u64> {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| mulmod(i as u64 % P, *c)).collect())
}

/// Largest root multiplicity of a binary form, from gcds of successive
/// derivatives modulo a large prime.
fn sup_mult_mod_p(h: &[BigInt]) -> u32 {
    let at_infinity = h.iter().take_while(|c| c.is_zero()).count() as u32;
    let reduce = |c: &BigInt| {
        let p = BigInt::from(P);
        (((c % &p) + &p) % &p).to_u64().unwrap()
    };
    let affine = trim(h.iter().rev().map(reduce).collect());
    let mut k = 1;
    let mut g = affine.clone();
    let mut d = affine;
    loop {
        d = derivative(&d);
        if d.is_empty() {
            break;
        }
        g = gcd(g, d.clone());
        if g.len() <= 1 {
            break;
        }
        k += 1;
    }
    let finite = if g.is_empty() { 0 } else { k };
    finite.max(at_infinity)
}

fn random_morphism(rng: &mut StdRng) -> SelfMap {
    loop {
        let c: Vec<i64> = (0..6).map(|_| rng.gen_range(-4..=4)).collect();
        let texts = [
            format!("({})*x0^2 + ({})*x0*x1 + ({})*x1^2", c[0], c[1], c[2]),
            format!("({})*x0^2 + ({})*x0*x1 + ({})*x1^2", c[3], c[4], c[5]),
        ];
        let Ok(f) = SelfMap::parse(&texts) else { continue };
        if f.degree() == 2 && f.check_morphism_p1().unwrap_or(false) {
            return f;
        }
    }
}

#[test]
fn backward_mult_against_mod_p_oracle() {
    let mut rng = StdRng::seed_from_u64(3);
    let mut maps = vec![
        SelfMap::parse(&["x0^2 + x1^2", "x0*x1"]).unwrap(),
        SelfMap::parse(&["x0^2", "x1^2"]).unwrap(),
        SelfMap::parse(&["x0^2 - 2*x1^2", "x1^2"]).unwrap(),
    ];
    maps.extend((0..10).map(|_| random_morphism(&mut rng)));
    let targets = [[0, 1], [1, 0], [1, 1], [2, 1], [-1, 2]];
    for f in &maps {
        for (n, fg) in P1Iterates::new(f, CAP).unwrap().take(4).enumerate() {
            let fg = fg.unwrap();
            for y in targets {
                let y = ProjPoint::from_i64s(&y).unwrap();
                let want = sup_mult_mod_p(&fiber_form(&fg, &y));
                assert_eq!(backward_sup_mult(f, &y, n + 1, CAP).unwrap(), want, "{f} over {y}, n = {}", n + 1);
            }
        }
    }
}

#[test]
fn joukowski_map_over_two() {
    // z + 1/z has a critical point over 2, so every fiber of fⁿ over 2 has a
    // double root and the n-th roots fall towards 1
    let f = SelfMap::parse(&["x0^2 + x1^2", "x0*x1"]).unwrap();
    let y = ProjPoint::from_i64s(&[2, 1]).unwrap();
    let series = e_minus_series(&f, &y, 6, CAP).unwrap();
    assert!(series.iter().all(|e| e.sup_mult == 2));
    assert!(series.windows(2).all(|w| w[1].nth_root < w[0].nth_root));
}

#[test]
fn ram_index_of_squaring() {
    let f = SelfMap::parse(&["x0^2", "x1^2"]).unwrap();
    assert_eq!(ram_index(&f, &ProjPoint::from_i64s(&[0, 1]).unwrap()).unwrap(), 2);
    assert_eq!(ram_index(&f, &ProjPoint::from_i64s(&[1, 0]).unwrap()).unwrap(), 2);
    assert_eq!(ram_index(&f, &ProjPoint::from_i64s(&[3, 2]).unwrap()).unwrap(), 1);
}

#[test]
fn degree_cap_is_enforced() {
    let f = SelfMap::parse(&["x0^2", "x1^2"]).unwrap();
    let y = ProjPoint::from_i64s(&[0, 1]).unwrap();
    assert!(matches!(
        backward_sup_mult(&f, &y, 13, CAP),
        Err(orbitlab_core::Error::IterateOverflow { .. })
    ));
}

#[test]
fn chain_rule_on_random_orbits() {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..40 {
        let f = random_morphism(&mut rng);
        let x = loop {
            if let Ok(x) = ProjPoint::from_i64s(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3)]) {
                break x;
            }
        };
        for n in 1..=4 {
            let direct = iterate_multiplicity(&f, &x, n, CAP).unwrap();
            assert_eq!(e_plus_rational(&f, &x, n).unwrap(), direct as u64, "{f} at {x}, n = {n}");
        }
    }
}

fn product(factors: &[(i64, u32)]) -> UPoly {
    factors
        .iter()
        .fold(UPoly::one(), |acc, &(r, k)| acc.mul(&UPoly::from_i64s(&[-r, 1]).pow(k)))
}

proptest! {
    #[test]
    fn yun_reconstructs(roots in prop::collection::btree_map(-20i64..20, 1u32..5, 1..5), lead in 1i64..7) {
        let factors: Vec<(i64, u32)> = roots.into_iter().collect();
        let p = product(&factors).mul(&UPoly::from_i64s(&[lead]));
        let parts = yun_factors(&p).unwrap();
        let rebuilt = parts.iter().fold(UPoly::one(), |acc, (k, q)| acc.mul(&q.pow(*k)));
        prop_assert_eq!(rebuilt, p.monic());
        let mut counts: Vec<(u32, usize)> = Vec::new();
        for &(_, k) in &factors {
            match counts.iter_mut().find(|(m, _)| *m == k) {
                Some(entry) => entry.1 += 1,
                None => counts.push((k, 1)),
            }
        }
        let want = MultiplicityProfile::from_counts(counts);
        let coeffs: Vec<BigInt> = p.coeffs().iter().rev().map(|c| c.to_integer()).collect();
        prop_assert_eq!(binary_profile(&coeffs).unwrap(), want);
    }
}
