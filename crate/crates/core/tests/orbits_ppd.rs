use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use orbitlab_core::heights::naive_height;
use orbitlab_core::orbits::{alpha_from_heights, alpha_series, dml_probe, ratio_series, Ratio};
use orbitlab_core::ppd::{b_sum, b_sum_series, ppd_exists, ppd_primes, PrimitivePrimes};
use orbitlab_core::{Budget, Error, Form, ProjPoint, SelfMap, Subscheme};
use proptest::prelude::*;

const INTRO: [&str; 3] = ["x0^2 + x1^2 + x2^2", "x1*x2", "x0^2 + x1*x2"];

fn intro() -> (SelfMap, ProjPoint) {
    (SelfMap::parse(&INTRO).unwrap(), ProjPoint::from_i64s(&[1, 1, 1]).unwrap())
}

fn primes(ps: &[u32]) -> Vec<BigUint> {
    ps.iter().map(|&p| BigUint::from(p)).collect()
}

#[test]
fn alpha_estimators_agree() {
    let (f, x) = intro();
    let series = alpha_series(&f, &x, 12).unwrap();
    let last = series.last().unwrap();
    assert_eq!(last.n, 12);
    assert!((last.root_estimate - last.ratio_estimate.unwrap()).abs() < 0.1);

    let heights: Vec<_> = f.iterate(&x, 13).unwrap().iter().map(naive_height).collect();
    assert_eq!(alpha_from_heights(&heights), series);
}

#[test]
fn alpha_reports_cycles() {
    let f = SelfMap::parse(&["x1", "x0"]).unwrap();
    let x = ProjPoint::from_i64s(&[1, 2]).unwrap();
    assert!(matches!(
        alpha_series(&f, &x, 5),
        Err(Error::DegenerateOrbit { preperiod: 0, period: 2 })
    ));
}

#[test]
fn dml_probe_residual_vanishes() {
    let (f, x) = intro();
    let phi0 = Form::parse("x0", 3).unwrap();
    let phi1 = Form::parse("x1", 3).unwrap();
    for row in dml_probe(&f, &x, &phi0, &phi1, 8).unwrap() {
        let scale = naive_height(&f.iterate(&x, row.n).unwrap()[row.n]).value().max(1.0);
        assert!(row.residual.abs() < 1e-9 * scale, "n = {}: {}", row.n, row.residual);
    }
}

#[test]
fn dml_probe_stops_on_indeterminacy() {
    let f = SelfMap::parse(&["x0*x2", "x1*x2", "x2^2"]).unwrap();
    let x = ProjPoint::from_i64s(&[0, 0, 1]).unwrap();
    let phi0 = Form::parse("x0", 3).unwrap();
    let phi1 = Form::parse("x1", 3).unwrap();
    assert!(matches!(
        dml_probe(&f, &x, &phi0, &phi1, 3),
        Err(Error::OnIndeterminacy { index: 0 })
    ));
}

#[test]
fn ratio_on_target_is_infinite() {
    let f = SelfMap::parse(&["x0^2", "x1^2", "x2^2"]).unwrap();
    let y = Subscheme::parse("(0:0:1)", &["x0", "x1"], 3).unwrap();
    let x = ProjPoint::from_i64s(&[0, 0, 1]).unwrap();
    let series = ratio_series(&f, &x, &y, 2).unwrap();
    assert!(series.iter().all(|e| e.ratio == Ratio::Infinite));
}

proptest! {
    #[test]
    fn ratio_is_at_most_one_for_a_point(a in 1i64..200, b in 1i64..200, c in 1i64..200) {
        // h_Y ≤ h_naive for Y = (0:0:1), since gcd(a,b) ≤ max(|a|,|b|)
        let (f, _) = intro();
        let x = ProjPoint::from_i64s(&[a, b, c]).unwrap();
        let y = Subscheme::parse("(0:0:1)", &["x0", "x1"], 3).unwrap();
        for e in ratio_series(&f, &x, &y, 4).unwrap() {
            if let Ratio::Finite(r) = e.ratio {
                prop_assert!(r <= 1.0 + 1e-12, "n = {}: {}", e.n, r);
            }
        }
    }

    #[test]
    fn excluding_more_primes_loses_existence(a in 1i64..50, b in 1i64..50, c in 1i64..50) {
        let (f, _) = intro();
        let x = ProjPoint::from_i64s(&[a, b, c]).unwrap();
        let form = Form::parse("x0", 3).unwrap();
        prop_assume!(f.orbit(&x).take(6).all(|p| p.is_ok_and(|p| !p.coords()[0].is_zero())));
        let small = ppd_exists(&f, &x, &form, &primes(&[2]), 5).unwrap();
        let large = ppd_exists(&f, &x, &form, &primes(&[2, 3, 5, 7]), 5).unwrap();
        for ((n, s), (_, l)) in small.into_iter().zip(large) {
            prop_assert!(!l || s, "n = {n}");
        }
    }

    #[test]
    fn b_sum_grows_with_window(a in 1i64..30, b in 1i64..30, c in 1i64..30) {
        let (f, _) = intro();
        let x = ProjPoint::from_i64s(&[a, b, c]).unwrap();
        let form = Form::parse("x0", 3).unwrap();
        prop_assume!(f.orbit(&x).take(7).all(|p| p.is_ok_and(|p| !p.coords()[0].is_zero())));
        let rows: Vec<_> = (0..4).map(|l| b_sum_series(&f, &x, &form, &[], 6, l).unwrap()).collect();
        for l in 1..4 {
            for (wide, narrow) in rows[l].iter().zip(&rows[l - 1]) {
                prop_assert!(wide.1.value() >= narrow.1.value() - 1e-12);
            }
        }
    }
}

#[test]
fn b_sum_window_checks() {
    let (f, x) = intro();
    let form = Form::parse("x0", 3).unwrap();
    assert!(b_sum(&f, &x, &form, &[], 3, 3).is_err());
    // 321 = 3·107 and 3 divides a(1) = 3
    let b = b_sum(&f, &x, &form, &[], 3, 0).unwrap();
    assert!((b.value() - 107f64.ln()).abs() < 1e-12);
}

#[test]
fn primitive_primes_match_direct_divisibility() {
    let (f, x) = intro();
    let form = Form::parse("x0", 3).unwrap();
    let reports = ppd_primes(&f, &x, &form, &[], 6, &Budget::default()).unwrap();
    let values: Vec<BigInt> = reports.iter().map(|r| r.value.clone()).collect();
    for r in &reports {
        let fac = r.factorization.as_ref().unwrap();
        assert!(fac.is_complete());
        let want: Vec<BigUint> = fac
            .primes()
            .filter(|p| {
                let p = BigInt::from((*p).clone());
                values[..r.n].iter().all(|v| !v.is_multiple_of(&p))
            })
            .cloned()
            .collect();
        let PrimitivePrimes::Known(got) = &r.primitive_primes else {
            panic!("n = {}: primes unknown", r.n)
        };
        let got: Vec<BigUint> = got.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(got, want, "n = {}", r.n);
        assert_eq!(r.exists, !want.is_empty());
    }
}

#[test]
fn gcd_of_mersenne_like_pairs() {
    // gcd(2ⁿ − 1, 3ⁿ − 1) from the diagonal orbit against a direct gcd
    let f = SelfMap::parse(&["2*x0", "3*x1", "x2"]).unwrap();
    let y = Subscheme::parse("(1:1:1)", &["x0 - x2", "x1 - x2"], 3).unwrap();
    let series = ratio_series(&f, &ProjPoint::from_i64s(&[1, 1, 1]).unwrap(), &y, 40).unwrap();
    for e in series.iter().skip(1) {
        let n = e.n as u32;
        let two = BigUint::from(2u32).pow(n) - BigUint::one();
        let three = BigUint::from(3u32).pow(n) - BigUint::one();
        assert_eq!(e.height.finite().unwrap().finite_mult, two.gcd(&three));
    }
    assert!(series[0].height.is_infinite());
}
