//! Multiplicities of self-morphisms of ℙ¹.
//!
//! On a smooth curve the multiplicity e_f(x) is the ramification index. For a
//! target y = (y₀ : y₁), the fiber of fⁿ over y is the zero set of the binary
//! form y₁·Fₙ − y₀·Gₙ, and e_{fⁿ}(z) is the multiplicity of z as a root. All
//! multiplicities are read off exactly: by repeated division for rational
//! points, by squarefree decomposition for whole fibers. No root finding.

mod upoly;

pub use upoly::{yun_factors, yun_squarefree, MultiplicityProfile, UPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::{ProjPoint, SelfMap};

/// Dense binary form `[c₀, …, c_d]`, coefficient of s^{d−i} tⁱ.
pub type BinaryForm = Vec<BigInt>;

fn mul_forms(a: &[BigInt], b: &[BigInt]) -> BinaryForm {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn lincomb(y1: &BigInt, f: &[BigInt], y0: &BigInt, g: &[BigInt]) -> BinaryForm {
    f.iter().zip(g).map(|(a, b)| y1 * a - y0 * b).collect()
}

/// Substitutes (s, t) ↦ (P, Q) into the binary form `h`.
fn compose(h: &[BigInt], p: &[BigInt], q: &[BigInt]) -> BinaryForm {
    let d = h.len() - 1;
    let deg_inner = p.len() - 1;
    let mut p_pows = vec![vec![BigInt::one()]];
    let mut q_pows = vec![vec![BigInt::one()]];
    for k in 1..=d {
        p_pows.push(mul_forms(&p_pows[k - 1], p));
        q_pows.push(mul_forms(&q_pows[k - 1], q));
    }
    let mut out = vec![BigInt::zero(); d * deg_inner + 1];
    for (i, c) in h.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = mul_forms(&p_pows[d - i], &q_pows[i]);
        for (o, t) in out.iter_mut().zip(term) {
            *o += c * t;
        }
    }
    out
}

fn eval_form(h: &[BigInt], x: &ProjPoint) -> BigInt {
    let (s, t) = (&x.coords()[0], &x.coords()[1]);
    // Horner in s/t: Σ c_i s^{d-i} t^i
    let mut acc = BigInt::zero();
    let mut t_pow = BigInt::one();
    let d = h.len() - 1;
    let mut s_pows = vec![BigInt::one(); d + 1];
    for k in 1..=d {
        s_pows[k] = &s_pows[k - 1] * s;
    }
    for (i, c) in h.iter().enumerate() {
        if !c.is_zero() {
            acc += c * &s_pows[d - i] * &t_pow;
        }
        t_pow *= t;
    }
    acc
}

/// Multiplicity of the point x = (a : b) as a root of the binary form h.
pub fn root_multiplicity(h: &[BigInt], x: &ProjPoint) -> Result<u32> {
    if h.iter().all(Zero::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let (a, b) = (&x.coords()[0], &x.coords()[1]);
    if b.is_zero() {
        // x = (1:0); t divides h exactly as often as leading coefficients vanish
        return Ok(h.iter().take_while(|c| c.is_zero()).count() as u32);
    }
    let mut cur: Vec<BigInt> = h.to_vec();
    let mut k = 0;
    // h = (b·s − a·t)·q  ⇔  cᵢ = b·qᵢ − a·qᵢ₋₁
    while cur.len() > 1 && eval_form(&cur, x).is_zero() {
        let mut q = Vec::with_capacity(cur.len() - 1);
        let mut prev = BigInt::zero();
        for c in &cur[..cur.len() - 1] {
            let num = c + a * &prev;
            let (qi, r) = num.div_rem(b);
            debug_assert!(r.is_zero());
            q.push(qi.clone());
            prev = qi;
        }
        cur = q;
        k += 1;
    }
    Ok(k)
}

fn require_p1_morphism(f: &SelfMap) -> Result<()> {
    if !f.check_morphism_p1()? {
        return Err(Error::MapDegenerate);
    }
    Ok(())
}

fn components(f: &SelfMap) -> Result<(BinaryForm, BinaryForm)> {
    Ok((
        f.components()[0].binary_coefficients()?,
        f.components()[1].binary_coefficients()?,
    ))
}

fn strip_content(f: &mut [BigInt], g: &mut [BigInt]) {
    let c = f.iter().chain(g.iter()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !c.is_zero() && !c.is_one() {
        for x in f.iter_mut().chain(g.iter_mut()) {
            *x /= &c;
        }
    }
}

fn check_degree(d: u32, n: usize, cap: u64) -> Result<()> {
    let degree = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if degree > cap as u128 {
        return Err(Error::IterateOverflow { degree, cap });
    }
    Ok(())
}

/// Content-free components (Fₙ, Gₙ) of fⁿ for n = 1, 2, …, composed as
/// f ∘ fⁿ⁻¹. Stops with `IterateOverflow` once dⁿ exceeds `degree_cap`.
pub struct P1Iterates {
    f: BinaryForm,
    g: BinaryForm,
    current: Option<(BinaryForm, BinaryForm)>,
    degree: u32,
    n: usize,
    cap: u64,
}

impl P1Iterates {
    pub fn new(map: &SelfMap, degree_cap: u64) -> Result<P1Iterates> {
        require_p1_morphism(map)?;
        let (f, g) = components(map)?;
        Ok(P1Iterates {
            f,
            g,
            current: None,
            degree: map.degree(),
            n: 0,
            cap: degree_cap,
        })
    }
}

impl Iterator for P1Iterates {
    type Item = Result<(BinaryForm, BinaryForm)>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.n + 1;
        if let Err(e) = check_degree(self.degree, n, self.cap) {
            return Some(Err(e));
        }
        let next = match &self.current {
            None => (self.f.clone(), self.g.clone()),
            Some((p, q)) => {
                let mut a = compose(&self.f, p, q);
                let mut b = compose(&self.g, p, q);
                strip_content(&mut a, &mut b);
                (a, b)
            }
        };
        self.n = n;
        self.current = Some(next.clone());
        Some(Ok(next))
    }
}

/// The fiber form y₁·F − y₀·G.
pub fn fiber_form(fg: &(BinaryForm, BinaryForm), y: &ProjPoint) -> BinaryForm {
    let (y0, y1) = (&y.coords()[0], &y.coords()[1]);
    lincomb(y1, &fg.0, y0, &fg.1)
}

/// Multiplicity profile of a binary form, counting the root at (1:0).
pub fn binary_profile(h: &[BigInt]) -> Result<MultiplicityProfile> {
    if h.iter().all(Zero::is_zero) {
        return Err(Error::MapDegenerate);
    }
    let at_infinity = h.iter().take_while(|c| c.is_zero()).count();
    // dehomogenize t = 1: coefficient of sʲ is c_{d−j}
    let ascending: Vec<BigInt> = h.iter().rev().cloned().collect();
    let affine = UPoly::from_integers(&ascending);
    let mut counts: Vec<(u32, usize)> = yun_squarefree(&affine)?.entries;
    if at_infinity > 0 {
        counts.push((at_infinity as u32, 1));
    }
    Ok(MultiplicityProfile::from_counts(counts))
}

fn check_p1_point(x: &ProjPoint) -> Result<()> {
    if x.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: x.len(),
        });
    }
    Ok(())
}

/// Ramification index e_f(x) of a morphism of ℙ¹ at a rational point.
pub fn ram_index(f: &SelfMap, x: &ProjPoint) -> Result<u32> {
    check_p1_point(x)?;
    require_p1_morphism(f)?;
    ram_index_unchecked(f, x)
}

fn ram_index_unchecked(f: &SelfMap, x: &ProjPoint) -> Result<u32> {
    let y = f.apply(x)?;
    let fg = components(f)?;
    root_multiplicity(&fiber_form(&fg, &y), x)
}

/// max over z with fⁿ(z) = y of e_{fⁿ}(z), over the algebraic closure.
pub fn backward_sup_mult(f: &SelfMap, y: &ProjPoint, n: usize, degree_cap: u64) -> Result<u32> {
    check_p1_point(y)?;
    if n == 0 {
        return Ok(1);
    }
    let fg = P1Iterates::new(f, degree_cap)?
        .nth(n - 1)
        .expect("iterates are unbounded")?;
    Ok(binary_profile(&fiber_form(&fg, y))?.max_multiplicity())
}

/// Fiber profile of fⁿ over y for every 1 ≤ n ≤ n_max.
pub fn fiber_profiles(
    f: &SelfMap,
    y: &ProjPoint,
    n_max: usize,
    degree_cap: u64,
) -> Result<Vec<MultiplicityProfile>> {
    check_p1_point(y)?;
    P1Iterates::new(f, degree_cap)?
        .take(n_max)
        .map(|fg| binary_profile(&fiber_form(&fg?, y)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EMinusEntry {
    pub n: usize,
    pub sup_mult: u32,
    /// sup_mult^{1/n}
    pub nth_root: f64,
}

/// The sequence whose limit is e_{f,−}(y).
pub fn e_minus_series(f: &SelfMap, y: &ProjPoint, n_max: usize, degree_cap: u64) -> Result<Vec<EMinusEntry>> {
    let mut out = Vec::with_capacity(n_max);
    for_each_e_minus(f, y, n_max, degree_cap, |e| {
        out.push(*e);
        Ok(())
    })?;
    Ok(out)
}

/// Streaming form of [`e_minus_series`].
pub fn for_each_e_minus<F>(f: &SelfMap, y: &ProjPoint, n_max: usize, degree_cap: u64, mut sink: F) -> Result<()>
where
    F: FnMut(&EMinusEntry) -> Result<()>,
{
    check_p1_point(y)?;
    for (i, fg) in P1Iterates::new(f, degree_cap)?.take(n_max).enumerate() {
        let n = i + 1;
        let sup_mult = binary_profile(&fiber_form(&fg?, y))?.max_multiplicity();
        sink(&EMinusEntry {
            n,
            sup_mult,
            nth_root: (sup_mult as f64).powf(1.0 / n as f64),
        })?;
    }
    Ok(())
}

/// e_{fⁿ}(x) by the chain rule Π_{m<n} e_f(f^m x).
pub fn e_plus_rational(f: &SelfMap, x: &ProjPoint, n: usize) -> Result<u64> {
    check_p1_point(x)?;
    require_p1_morphism(f)?;
    let mut e = 1u64;
    for p in f.orbit(x).take(n) {
        e *= ram_index_unchecked(f, &p?)? as u64;
    }
    Ok(e)
}

/// e_{fⁿ}(x) directly: multiplicity of x in the fiber of the composed
/// iterate fⁿ over fⁿ(x).
pub fn iterate_multiplicity(f: &SelfMap, x: &ProjPoint, n: usize, degree_cap: u64) -> Result<u32> {
    check_p1_point(x)?;
    if n == 0 {
        return Ok(1);
    }
    let fg = P1Iterates::new(f, degree_cap)?
        .nth(n - 1)
        .expect("iterates are unbounded")?;
    let y = f.iterate(x, n)?.pop().expect("nonempty orbit");
    root_multiplicity(&fiber_form(&fg, &y), x)
}

/// e(Y) estimate for a finite set of rational points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSetEstimate {
    pub series: Vec<(ProjPoint, Vec<EMinusEntry>)>,
    /// max over points of the n-th root at each n.
    pub running_max: Vec<f64>,
    /// running_max at n_max.
    pub estimate: f64,
}

pub fn e_of_point_set(
    f: &SelfMap,
    ys: &[ProjPoint],
    n_max: usize,
    degree_cap: u64,
) -> Result<PointSetEstimate> {
    if ys.is_empty() || n_max == 0 {
        return Err(Error::Invalid("need at least one point and n_max ≥ 1".into()));
    }
    let series = ys
        .iter()
        .map(|y| Ok((y.clone(), e_minus_series(f, y, n_max, degree_cap)?)))
        .collect::<Result<Vec<_>>>()?;
    let running_max: Vec<f64> = (0..n_max)
        .map(|i| {
            series
                .iter()
                .map(|(_, s)| s[i].nth_root)
                .fold(f64::MIN, f64::max)
        })
        .collect();
    let estimate = *running_max.last().expect("n_max ≥ 1");
    Ok(PointSetEstimate {
        series,
        running_max,
        estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::from_i64s(v).unwrap()
    }

    fn squaring() -> SelfMap {
        SelfMap::parse(&["x0^2", "x1^2"]).unwrap()
    }

    const CAP: u64 = 4096;

    #[test]
    fn ramification_indices() {
        let f = squaring();
        assert_eq!(ram_index(&f, &pt(&[0, 1])).unwrap(), 2);
        assert_eq!(ram_index(&f, &pt(&[1, 0])).unwrap(), 2);
        assert_eq!(ram_index(&f, &pt(&[1, 1])).unwrap(), 1);
        let newton = SelfMap::parse(&["x0^2 - x1^2", "2*x0*x1"]).unwrap();
        assert_eq!(ram_index(&newton, &pt(&[1, 1])).unwrap(), 1);
        let bad = SelfMap::parse(&["x0*x1", "x0^2"]).unwrap();
        assert_eq!(ram_index(&bad, &pt(&[1, 1])), Err(Error::MapDegenerate));
    }

    #[test]
    fn backward_multiplicities() {
        let f = squaring();
        assert_eq!(backward_sup_mult(&f, &pt(&[0, 1]), 3, CAP).unwrap(), 8);
        assert_eq!(backward_sup_mult(&f, &pt(&[1, 1]), 3, CAP).unwrap(), 1);
        assert_eq!(backward_sup_mult(&f, &pt(&[1, 0]), 3, CAP).unwrap(), 8);
        assert!(matches!(
            backward_sup_mult(&f, &pt(&[1, 1]), 13, CAP),
            Err(Error::IterateOverflow { degree: 8192, cap: 4096 })
        ));
    }

    #[test]
    fn e_minus_constant_on_squaring() {
        let f = squaring();
        for (y, expect) in [([0, 1], 2.0), ([1, 0], 2.0), ([1, 1], 1.0)] {
            for e in e_minus_series(&f, &pt(&y), 6, CAP).unwrap() {
                assert!((e.nth_root - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn e_plus_chain_rule() {
        let f = squaring();
        assert_eq!(e_plus_rational(&f, &pt(&[0, 1]), 5).unwrap(), 32);
        assert_eq!(e_plus_rational(&f, &pt(&[2, 3]), 5).unwrap(), 1);
        assert_eq!(iterate_multiplicity(&f, &pt(&[0, 1]), 4, CAP).unwrap(), 16);
    }

    #[test]
    fn point_set() {
        let f = squaring();
        let est = e_of_point_set(&f, &[pt(&[0, 1]), pt(&[1, 1])], 4, CAP).unwrap();
        assert!((est.estimate - 2.0).abs() < 1e-12);
        let est = e_of_point_set(&f, &[pt(&[1, 1])], 4, CAP).unwrap();
        assert!((est.estimate - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fiber_degree_bookkeeping() {
        // z ↦ z + 1/z, y = f(1) = (2:1) has the critical point 1 in its fiber
        let f = SelfMap::parse(&["x0^2 + x1^2", "x0*x1"]).unwrap();
        for (i, prof) in fiber_profiles(&f, &pt(&[2, 1]), 5, CAP).unwrap().iter().enumerate() {
            assert_eq!(prof.total_degree(), 2usize.pow(i as u32 + 1));
            assert_eq!(prof.max_multiplicity(), 2);
        }
    }

    #[test]
    fn root_multiplicity_by_division() {
        // (s - 2t)^3 (s + t)
        let h: Vec<BigInt> = [1, -5, 6, 4, -8].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(root_multiplicity(&h, &pt(&[2, 1])).unwrap(), 3);
        assert_eq!(root_multiplicity(&h, &pt(&[1, -1])).unwrap(), 1);
        assert_eq!(root_multiplicity(&h, &pt(&[1, 0])).unwrap(), 0);
    }
}
