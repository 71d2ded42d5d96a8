//! WebAssembly bindings for the browser demo. Every export returns a JSON
//! string; the `*_json` functions hold the logic and run natively too.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use kakeya_core::bounds::{best_m, c_alpha, format_rational, lemma_bound};
use kakeya_core::kakeya::{
    construct, upper_bound_size, verify, KakeyaSet, Provenance, Variant, Verdict,
};
use kakeya_core::search::{min_kakeya, MAX_SEARCH_Q};
use kakeya_core::{Field, LineSpec, Point, Space};

/// Largest field order the plane demo draws.
pub const MAX_PLANE_Q: u64 = 32;

#[derive(Serialize)]
struct LineJson {
    direction: Vec<u32>,
    points: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct PlaneJson {
    q: u32,
    label: String,
    size: usize,
    kakeya: bool,
    points: Vec<Vec<u32>>,
    /// One contained line per direction when Kakeya.
    lines: Vec<LineJson>,
    failing_direction: Option<Vec<u32>>,
    lower_bound: String,
}

fn plane_field(q: u64) -> Result<Field, String> {
    if q > MAX_PLANE_Q {
        return Err(format!("the demo draws q <= {MAX_PLANE_Q}"));
    }
    Field::new(q).map_err(|e| e.to_string())
}

fn describe(set: &KakeyaSet, label: String) -> Result<String, String> {
    let space = set.space();
    let verdict = verify(set);
    let (lines, failing_direction) = match &verdict {
        Verdict::Kakeya { witnesses } => (
            witnesses
                .iter()
                .map(|(d, a)| LineJson {
                    direction: d.0.clone(),
                    points: space
                        .line_points(&LineSpec {
                            base: a.clone(),
                            dir: d.clone(),
                        })
                        .into_iter()
                        .map(|p| p.0)
                        .collect(),
                })
                .collect(),
            None,
        ),
        Verdict::NotKakeya { direction } => (Vec::new(), Some(direction.0.clone())),
    };
    let q = set.field().q();
    let lb = best_m(2, q, 4).map_err(|e| e.to_string())?;
    let out = PlaneJson {
        q,
        label,
        size: set.len(),
        kakeya: verdict.is_kakeya(),
        points: set.points().iter().map(|p| p.0.clone()).collect(),
        lines,
        failing_direction,
        lower_bound: lb.ceiling.to_string(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// A construction in `F_q^2`, verified, with one witness line per direction.
pub fn plane_construction_json(q: u64, variant: &str) -> Result<String, String> {
    let field = plane_field(q)?;
    let variant: Variant = variant
        .parse()
        .map_err(|e: kakeya_core::Error| e.to_string())?;
    let set = construct(&field, 2, variant).map_err(|e| e.to_string())?;
    describe(&set, variant.name().to_string())
}

/// Exact planar minimum, `q ≤ 9`.
pub fn plane_minimum_json(q: u64) -> Result<String, String> {
    if q > MAX_SEARCH_Q as u64 {
        return Err(format!("exact search covers q <= {MAX_SEARCH_Q}"));
    }
    let field = plane_field(q)?;
    let r = min_kakeya(&field, 2).map_err(|e| e.to_string())?;
    describe(&r.witness, "minimum".into())
}

/// Verifies an arbitrary planar point set given as `[[x, y], …]`.
pub fn plane_verify_json(q: u64, points: &str) -> Result<String, String> {
    let field = plane_field(q)?;
    let coords: Vec<Vec<u32>> = serde_json::from_str(points).map_err(|e| e.to_string())?;
    let space = Space::new(field, 2).map_err(|e| e.to_string())?;
    let set = KakeyaSet::new(space, coords.into_iter().map(Point), Provenance::Custom)
        .map_err(|e| e.to_string())?;
    describe(&set, "custom".into())
}

#[derive(Serialize)]
struct BoundRow {
    m: u32,
    nq: String,
    denom: String,
    bound: String,
    bound_f64: f64,
    ceiling: String,
}

#[derive(Serialize)]
struct BoundTable {
    q: u32,
    n: usize,
    best_m: u32,
    rows: Vec<BoundRow>,
    /// Size of the odd or even construction for this field, when one applies.
    construction: Option<String>,
}

/// Lower bound for every `m ≤ m_cap`, next to the construction size.
pub fn bound_table_json(q: u32, n: usize, m_cap: u32) -> Result<String, String> {
    if !(1..=64).contains(&m_cap) || !(1..=64).contains(&n) || q < 2 {
        return Err("need q >= 2, 1 <= n <= 64 and 1 <= m-cap <= 64".into());
    }
    let rows = (1..=m_cap)
        .map(|m| {
            let r = lemma_bound(n, q, m).map_err(|e| e.to_string())?;
            Ok(BoundRow {
                m,
                nq: r.nq.to_string(),
                denom: r.denom.to_string(),
                bound: format_rational(&r.bound),
                bound_f64: r.bound_f64(),
                ceiling: r.ceiling.to_string(),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    let best = best_m(n, q, m_cap).map_err(|e| e.to_string())?;
    let construction = Field::new(q as u64).ok().filter(|_| n >= 2).and_then(|f| {
        [Variant::Odd, Variant::Even]
            .into_iter()
            .filter(|v| v.supports(&f))
            .find_map(|v| upper_bound_size(&f, n, v).ok())
            .map(|r| r.exact.to_string())
    });
    serde_json::to_string(&BoundTable {
        q,
        n,
        best_m: best.m,
        rows,
        construction,
    })
    .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CurvePoint {
    alpha: f64,
    c_alpha: f64,
    probe_c_alpha: f64,
}

/// `c_α` at `steps` evenly spaced `α ∈ (0, 1]`.
pub fn c_alpha_curve_json(n_probe: usize, steps: usize) -> Result<String, String> {
    if !(2..=200).contains(&steps) || !(8..=256).contains(&n_probe) {
        return Err("need 2 <= steps <= 200 and 8 <= n-probe <= 256".into());
    }
    let points = (1..=steps)
        .map(|i| {
            let alpha = i as f64 / steps as f64;
            let r = c_alpha(alpha, n_probe).map_err(|e| e.to_string())?;
            Ok(CurvePoint {
                alpha,
                c_alpha: r.c_alpha,
                probe_c_alpha: r.probe_c_alpha,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    serde_json::to_string(&points).map_err(|e| e.to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn plane_construction(q: u32, variant: &str) -> Result<String, JsValue> {
    js(plane_construction_json(q as u64, variant))
}

#[wasm_bindgen]
pub fn plane_minimum(q: u32) -> Result<String, JsValue> {
    js(plane_minimum_json(q as u64))
}

#[wasm_bindgen]
pub fn plane_verify(q: u32, points: &str) -> Result<String, JsValue> {
    js(plane_verify_json(q as u64, points))
}

#[wasm_bindgen]
pub fn bound_table(q: u32, n: u32, m_cap: u32) -> Result<String, JsValue> {
    js(bound_table_json(q, n as usize, m_cap))
}

#[wasm_bindgen]
pub fn c_alpha_curve(n_probe: u32, steps: u32) -> Result<String, JsValue> {
    js(c_alpha_curve_json(n_probe as usize, steps as usize))
}
