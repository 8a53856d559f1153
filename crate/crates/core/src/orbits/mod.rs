//! Series indexed by orbit step: heights, arithmetic-degree estimates,
//! h_Y / h_naive ratios and the ℙ² → ℙ¹ projection probe.

mod cache;

pub use cache::{map_hash, CacheLine, CachedTarget, OrbitCache};

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::LogReal;
use crate::heights::{naive_height, subscheme_global_height, target_height, GlobalHeight, TargetHeight};
use crate::projective::{Form, ProjPoint, SelfMap, Subscheme};

/// One step of an orbit with its heights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub n: usize,
    pub point: ProjPoint,
    pub h_naive: LogReal,
    /// (label, height) in target order.
    pub target_heights: Vec<(String, TargetHeight)>,
}

impl OrbitRecord {
    pub fn compute(n: usize, point: ProjPoint, targets: &[Subscheme]) -> Result<OrbitRecord> {
        let target_heights = targets
            .iter()
            .map(|y| Ok((y.label.clone(), target_height(y, &point)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbitRecord {
            n,
            h_naive: naive_height(&point),
            point,
            target_heights,
        })
    }

    pub fn height(&self, label: &str) -> Option<&TargetHeight> {
        self.target_heights
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, h)| h)
    }
}

/// Records for n = 0…n_max. A step landing on a target gets an
/// [`TargetHeight::Infinite`] entry rather than an error.
pub fn orbit_table(
    f: &SelfMap,
    x: &ProjPoint,
    targets: &[Subscheme],
    n_max: usize,
) -> Result<Vec<OrbitRecord>> {
    let mut out = Vec::with_capacity(n_max + 1);
    for_each_record(f, x, targets, n_max, None, |r| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok(out)
}

/// Streams orbit records to `sink`, reusing and extending `cache` when given.
///
/// Points come from the cache for every n it already holds contiguously from
/// 0; the rest are iterated and appended. Heights are always recomputed from
/// the point, so warm and cold runs produce identical records.
pub fn for_each_record<F>(
    f: &SelfMap,
    x: &ProjPoint,
    targets: &[Subscheme],
    n_max: usize,
    mut cache: Option<&mut OrbitCache>,
    mut sink: F,
) -> Result<()>
where
    F: FnMut(&OrbitRecord) -> Result<()>,
{
    let cached = match cache.as_deref() {
        Some(c) => c.cached_points(f, x),
        None => Vec::new(),
    };
    let mut current = x.clone();
    for n in 0..=n_max {
        if n > 0 {
            current = match cached.get(n) {
                Some(p) => p.clone(),
                None => f.apply(&current).map_err(|e| match e {
                    Error::IndeterminatePoint { .. } => Error::IndeterminatePoint { index: n },
                    other => other,
                })?,
            };
        }
        let record = OrbitRecord::compute(n, current.clone(), targets)?;
        if n >= cached.len() {
            if let Some(c) = cache.as_deref_mut() {
                c.append(f, x, &record)?;
            }
        }
        sink(&record)?;
    }
    Ok(())
}

/// Two estimates of the arithmetic degree at step n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaEstimate {
    pub n: usize,
    /// max(1, h(fⁿx))^{1/n}
    pub root_estimate: f64,
    /// h(fⁿ⁺¹x) / h(fⁿx), undefined while h(fⁿx) = 0
    pub ratio_estimate: Option<f64>,
}

/// Estimates for n = 1…len−2 from a height sequence h(f⁰x), h(f¹x), ….
pub fn alpha_from_heights(heights: &[LogReal]) -> Vec<AlphaEstimate> {
    (1..heights.len().saturating_sub(1))
        .map(|n| estimate_at(heights, n))
        .collect()
}

fn estimate_at(heights: &[LogReal], n: usize) -> AlphaEstimate {
    let h = heights[n].value();
    AlphaEstimate {
        n,
        root_estimate: h.max(1.0).powf(1.0 / n as f64),
        ratio_estimate: (h > 0.0).then(|| heights[n + 1].value() / h),
    }
}

/// Arithmetic degree estimates for 1 ≤ n ≤ n_max.
///
/// Fails with [`Error::DegenerateOrbit`] if the orbit closes up into a cycle
/// before step n_max + 1.
pub fn alpha_series(f: &SelfMap, x: &ProjPoint, n_max: usize) -> Result<Vec<AlphaEstimate>> {
    let mut out = Vec::with_capacity(n_max);
    for_each_alpha(f, x, n_max, |a| {
        out.push(*a);
        Ok(())
    })?;
    Ok(out)
}

/// Streaming form of [`alpha_series`]; estimates already emitted stay
/// valid when a cycle is detected later.
pub fn for_each_alpha<F>(f: &SelfMap, x: &ProjPoint, n_max: usize, mut sink: F) -> Result<()>
where
    F: FnMut(&AlphaEstimate) -> Result<()>,
{
    let mut seen: HashMap<ProjPoint, usize> = HashMap::new();
    let mut heights = Vec::with_capacity(n_max + 2);
    for (n, p) in f.orbit(x).take(n_max + 2).enumerate() {
        let p = p?;
        if let Some(&first) = seen.get(&p) {
            return Err(Error::DegenerateOrbit {
                preperiod: first,
                period: n - first,
            });
        }
        heights.push(naive_height(&p));
        seen.insert(p, n);
        if n >= 2 {
            sink(&estimate_at(&heights, n - 1))?;
        }
    }
    Ok(())
}

/// h_Y / h_naive at one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Ratio {
    Finite(f64),
    /// fⁿ(x) lies on Y.
    Infinite,
    /// h_naive(fⁿx) = 0.
    Undefined,
}

impl Ratio {
    pub fn of(height: &TargetHeight, h_naive: LogReal) -> Ratio {
        match height {
            TargetHeight::Infinite => Ratio::Infinite,
            TargetHeight::Finite(_) if h_naive.value() <= 0.0 => Ratio::Undefined,
            TargetHeight::Finite(h) => Ratio::Finite(h.total / h_naive),
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Ratio::Finite(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioEntry {
    pub n: usize,
    pub height: TargetHeight,
    pub h_naive: LogReal,
    pub ratio: Ratio,
}

/// h_Y(fⁿx) / h_naive(fⁿx) for n = 0…n_max.
pub fn ratio_series(f: &SelfMap, x: &ProjPoint, y: &Subscheme, n_max: usize) -> Result<Vec<RatioEntry>> {
    let records = orbit_table(f, x, std::slice::from_ref(y), n_max)?;
    Ok(records
        .into_iter()
        .map(|r| {
            let (_, height) = r.target_heights.into_iter().next().expect("one target");
            RatioEntry {
                n: r.n,
                ratio: Ratio::of(&height, r.h_naive),
                height,
                h_naive: r.h_naive,
            }
        })
        .collect())
}

/// One row of the projection probe φ = (φ₀ : φ₁): ℙᴺ ⇢ ℙ¹ along an orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmlRow {
    pub n: usize,
    pub image: ProjPoint,
    pub h_image: LogReal,
    pub h_indeterminacy: GlobalHeight,
    /// h_{I_φ} / h_naive, undefined while h_naive = 0.
    pub ratio: Option<f64>,
    /// deg φ₀ · h_naive − h_{I_φ} − h_naive(image); zero up to rounding.
    pub residual: f64,
}

pub fn dml_probe(
    f: &SelfMap,
    x: &ProjPoint,
    phi0: &Form,
    phi1: &Form,
    n_max: usize,
) -> Result<Vec<DmlRow>> {
    let mut rows = Vec::with_capacity(n_max + 1);
    for_each_dml(f, x, phi0, phi1, n_max, |r| {
        rows.push(r.clone());
        Ok(())
    })?;
    Ok(rows)
}

/// Streaming form of [`dml_probe`].
pub fn for_each_dml<F>(
    f: &SelfMap,
    x: &ProjPoint,
    phi0: &Form,
    phi1: &Form,
    n_max: usize,
    mut sink: F,
) -> Result<()>
where
    F: FnMut(&DmlRow) -> Result<()>,
{
    if phi0.degree() != phi1.degree() {
        return Err(Error::Invalid("φ₀ and φ₁ must have the same degree".into()));
    }
    let locus = Subscheme::new("I_phi", vec![phi0.clone(), phi1.clone()])?;
    let deg = phi0.degree() as f64;
    for (n, p) in f.orbit(x).take(n_max + 1).enumerate() {
        let p = p?;
        let v0 = phi0.eval(&p)?;
        let v1 = phi1.eval(&p)?;
        if v0.is_zero() && v1.is_zero() {
            return Err(Error::OnIndeterminacy { index: n });
        }
        let image = ProjPoint::normalize(vec![v0, v1])?;
        let h_image = naive_height(&image);
        let h_naive = naive_height(&p);
        let h_indeterminacy = subscheme_global_height(&locus, &p)?;
        let residual = (h_naive * deg - h_indeterminacy.total - h_image).value();
        let ratio = (h_naive.value() > 0.0).then(|| h_indeterminacy.total / h_naive);
        sink(&DmlRow {
            n,
            image,
            h_image,
            h_indeterminacy,
            ratio,
            residual,
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::from_i64s(v).unwrap()
    }

    fn intro_map() -> SelfMap {
        SelfMap::parse(&["x0^2 + x1^2 + x2^2", "x1*x2", "x0^2 + x1*x2"]).unwrap()
    }

    fn y01() -> Subscheme {
        Subscheme::parse("P", &["x0", "x1"], 3).unwrap()
    }

    #[test]
    fn gcd_column() {
        let t = orbit_table(&intro_map(), &pt(&[1, 1, 1]), &[y01()], 6).unwrap();
        let col: Vec<u32> = t
            .iter()
            .map(|r| {
                let h = r.height("P").unwrap().finite().unwrap();
                u32::try_from(&h.finite_mult).unwrap()
            })
            .collect();
        assert_eq!(col, vec![1, 1, 2, 1, 1, 2, 1]);
    }

    #[test]
    fn squaring_map_gcds() {
        let f = SelfMap::parse(&["x0^2", "x1^2", "x2^2"]).unwrap();
        let t = orbit_table(&f, &pt(&[2, 6, 1]), &[y01()], 5).unwrap();
        for r in &t {
            let h = r.height("P").unwrap().finite().unwrap();
            assert_eq!(h.finite_mult, BigUint::from(2u32).pow(1 << r.n));
        }
    }

    #[test]
    fn identity_orbit_constant() {
        let id = SelfMap::identity(3);
        let y = Subscheme::parse("Q", &["x0 - 2*x2", "x1"], 3).unwrap();
        let t = orbit_table(&id, &pt(&[1, 1, 1]), &[y], 4).unwrap();
        assert!(t.windows(2).all(|w| w[0].target_heights == w[1].target_heights));
    }

    #[test]
    fn infinite_marker_recorded() {
        let f = SelfMap::parse(&["2*x0", "3*x1", "x2"]).unwrap();
        let y = Subscheme::parse("one", &["x0 - x2", "x1 - x2"], 3).unwrap();
        let s = ratio_series(&f, &pt(&[1, 1, 1]), &y, 3).unwrap();
        assert_eq!(s[0].ratio, Ratio::Infinite);
        assert!(s[0].height.is_infinite());
        assert!(matches!(s[1].ratio, Ratio::Finite(_)));
    }

    #[test]
    fn squaring_ratio_constant() {
        let f = SelfMap::parse(&["x0^2", "x1^2", "x2^2"]).unwrap();
        let s = ratio_series(&f, &pt(&[2, 6, 1]), &y01(), 8).unwrap();
        let expect = 2f64.ln() / 6f64.ln();
        for e in &s {
            assert!((e.ratio.finite().unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn alpha_on_squaring_map_is_two() {
        let f = SelfMap::parse(&["x0^2", "x1^2", "x2^2"]).unwrap();
        for a in alpha_series(&f, &pt(&[2, 6, 1]), 8).unwrap() {
            assert_eq!(a.ratio_estimate, Some(2.0));
        }
    }

    #[test]
    fn periodic_orbit_is_degenerate() {
        let f = SelfMap::parse(&["x1", "x0", "x2"]).unwrap();
        let err = alpha_series(&f, &pt(&[2, 3, 1]), 5).unwrap_err();
        assert_eq!(err, Error::DegenerateOrbit { preperiod: 0, period: 2 });
    }

    #[test]
    fn dml_probe_on_intro_map() {
        let phi0 = Form::parse("x0", 3).unwrap();
        let phi1 = Form::parse("x1", 3).unwrap();
        let rows = dml_probe(&intro_map(), &pt(&[1, 1, 1]), &phi0, &phi1, 4).unwrap();
        assert_eq!(rows[1].image, pt(&[3, 1]));
        assert_eq!(rows[2].image, pt(&[7, 1]));
        assert_eq!(rows[3].image, pt(&[321, 22]));
        for r in &rows {
            assert!(r.residual.abs() < 1e-9);
        }
        let same = dml_probe(&intro_map(), &pt(&[1, 1, 1]), &phi0, &phi0, 3).unwrap();
        assert!(same.iter().all(|r| r.image == pt(&[1, 1]) && r.h_image == LogReal::ZERO));
    }

    #[test]
    fn dml_probe_indeterminacy() {
        let f = SelfMap::identity(3);
        let phi0 = Form::parse("x0", 3).unwrap();
        let phi1 = Form::parse("x1", 3).unwrap();
        assert_eq!(
            dml_probe(&f, &pt(&[0, 0, 1]), &phi0, &phi1, 2).unwrap_err(),
            Error::OnIndeterminacy { index: 0 }
        );
    }
}
