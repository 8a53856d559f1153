//! Browser bindings for the orbit explorer page in `www/`.
//!
//! Each export takes plain strings (map components separated by `;`, a
//! point like `1:1:1`) and returns a JSON table. The work happens in the
//! `*_json` functions so they can be tested off the browser.

use orbitlab_core::heights::TargetHeight;
use orbitlab_core::mult1::e_minus_series;
use orbitlab_core::orbits::{orbit_table, Ratio};
use orbitlab_core::ppd::for_each_ppd;
use orbitlab_core::{Budget, Form, ProjPoint, SelfMap, Subscheme};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Longest orbit the page may request.
pub const MAX_STEPS: usize = 64;

#[derive(Serialize)]
struct OrbitRow {
    n: usize,
    point: String,
    h_naive: f64,
    /// null when the point lies on the target
    h_target: Option<f64>,
    finite_mult: Option<String>,
    ratio: Option<f64>,
}

#[derive(Serialize)]
struct PpdRow {
    n: usize,
    value: String,
    exists: bool,
    b_value: f64,
}

#[derive(Serialize)]
struct MultRow {
    n: usize,
    sup_mult: u32,
    nth_root: f64,
}

fn split(text: &str, sep: char) -> Vec<&str> {
    text.split(sep).map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_inputs(map: &str, point: &str, n_max: usize) -> Result<(SelfMap, ProjPoint), String> {
    if n_max > MAX_STEPS {
        return Err(format!("at most {MAX_STEPS} steps"));
    }
    let f = SelfMap::parse(&split(map, ';')).map_err(|e| e.to_string())?;
    let x: ProjPoint = point.parse().map_err(|e: orbitlab_core::Error| e.to_string())?;
    if x.len() != f.num_vars() {
        return Err(format!("point has {} coordinates, map needs {}", x.len(), f.num_vars()));
    }
    Ok((f, x))
}

fn to_json<T: Serialize>(rows: &T) -> Result<String, String> {
    serde_json::to_string(rows).map_err(|e| e.to_string())
}

/// Orbit of `point` with naive heights and the height relative to the
/// subscheme cut out by `target` (generators separated by `,`).
pub fn orbit_json(map: &str, point: &str, target: &str, n_max: usize) -> Result<String, String> {
    let (f, x) = parse_inputs(map, point, n_max)?;
    let y = Subscheme::parse("Y", &split(target, ','), f.num_vars()).map_err(|e| e.to_string())?;
    let records = orbit_table(&f, &x, std::slice::from_ref(&y), n_max).map_err(|e| e.to_string())?;
    let rows: Vec<OrbitRow> = records
        .into_iter()
        .map(|r| {
            let (_, h) = &r.target_heights[0];
            let ratio = match Ratio::of(h, r.h_naive) {
                Ratio::Finite(v) => Some(v),
                _ => None,
            };
            let (h_target, finite_mult) = match h {
                TargetHeight::Finite(g) => (Some(g.total.value()), Some(g.finite_mult.to_string())),
                TargetHeight::Infinite => (None, None),
            };
            OrbitRow {
                n: r.n,
                point: r.point.to_string(),
                h_naive: r.h_naive.value(),
                h_target,
                finite_mult,
                ratio,
            }
        })
        .collect();
    to_json(&rows)
}

/// Primitive prime divisor test on F(fⁿ(x)) with S empty.
pub fn ppd_json(map: &str, point: &str, form: &str, n_max: usize) -> Result<String, String> {
    let (f, x) = parse_inputs(map, point, n_max)?;
    let form = Form::parse(form, f.num_vars()).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for_each_ppd(&f, &x, &form, &[], n_max, None, |r| {
        rows.push(PpdRow {
            n: r.n,
            value: r.value.to_string(),
            exists: r.exists,
            b_value: r.b_value.value(),
        });
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    to_json(&rows)
}

/// Largest multiplicity in the fiber of fⁿ over a point of ℙ¹.
pub fn mult_json(map: &str, point: &str, n_max: usize) -> Result<String, String> {
    let (f, y) = parse_inputs(map, point, n_max)?;
    let rows: Vec<MultRow> = e_minus_series(&f, &y, n_max, Budget::default().degree_cap)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|e| MultRow {
            n: e.n,
            sup_mult: e.sup_mult,
            nth_root: e.nth_root,
        })
        .collect();
    to_json(&rows)
}

#[wasm_bindgen]
pub fn orbit(map: &str, point: &str, target: &str, n_max: usize) -> Result<String, JsValue> {
    orbit_json(map, point, target, n_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ppd(map: &str, point: &str, form: &str, n_max: usize) -> Result<String, JsValue> {
    ppd_json(map, point, form, n_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn multiplicities(map: &str, point: &str, n_max: usize) -> Result<String, JsValue> {
    mult_json(map, point, n_max).map_err(|e| JsValue::from_str(&e))
}
