//! WebAssembly bindings for the browser demo. Every export returns a JSON string; the
//! plain-Rust functions behind them are usable (and tested) natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use toriclg::compactification::infinity_fiber_report;
use toriclg::laurent::{standard_polynomial, ModelSpec};
use toriclg::period::{check_period_condition, default_order};
use toriclg::sweep::{k_table_row, to_json, SweepRange};

/// Largest torus dimension the demo computes, to keep the page responsive.
pub const MAX_DEMO_TORUS_DIM: usize = 4;

/// Accepts `"3"`, `"2 2"`, `"2,3"`, and `""` or `"-"` for projective space.
pub fn parse_degrees(text: &str) -> Result<Vec<u32>, String> {
    let t = text.trim();
    if t.is_empty() || t == "-" {
        return Ok(Vec::new());
    }
    t.split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| format!("not a degree: {s:?}")))
        .collect()
}

fn demo_spec(degrees: &str, ambient: u32) -> Result<ModelSpec, String> {
    let spec = ModelSpec::new(parse_degrees(degrees)?, ambient).map_err(|e| e.to_string())?;
    if spec.torus_dim() > MAX_DEMO_TORUS_DIM {
        return Err(format!("torus dimension {} exceeds the demo limit {MAX_DEMO_TORUS_DIM}", spec.torus_dim()));
    }
    Ok(spec)
}

/// Standard polynomial and its period check up to `order` (0 selects `3ι`).
pub fn model_report(degrees: &str, ambient: u32, order: u32) -> Result<Value, String> {
    let spec = demo_spec(degrees, ambient)?;
    let f = standard_polynomial(&spec);
    let order = if order == 0 { default_order(&spec) } else { order.min(4 * spec.index()) };
    Ok(json!({
        "spec": spec.to_json(),
        "label": spec.label(),
        "polynomial": f.render(&spec.layout().names()),
        "terms": f.len(),
        "period": check_period_condition(&spec, order).to_json(),
    }))
}

/// Fiber report plus coordinates and edges for drawing when `n ≤ 3`.
pub fn fiber_report(degrees: &str, ambient: u32) -> Result<Value, String> {
    let spec = demo_spec(degrees, ambient)?;
    let r = infinity_fiber_report(&spec).map_err(|e| e.to_string())?;
    let drawable = spec.torus_dim() <= 3;
    let coords: Vec<Vec<i64>> = if drawable {
        r.triangulation.points.iter().map(|p| p.to_i64().unwrap_or_default()).collect()
    } else {
        Vec::new()
    };
    let edges: Vec<[usize; 2]> = if drawable {
        r.edges().into_iter().map(|(a, b)| [a, b]).collect()
    } else {
        Vec::new()
    };
    Ok(json!({
        "spec": spec.to_json(),
        "label": spec.label(),
        "k": r.k,
        "fVector": r.f_vector,
        "euler": r.euler_characteristic,
        "sphere": r.is_sphere(),
        "unimodular": r.all_simplices_unimodular,
        "certified": r.certified(),
        "method": r.triangulation.method.as_str(),
        "typeI": r.facet_types.values().filter(|t| t.as_str() == "I").count(),
        "typeII": r.facet_types.values().filter(|t| t.as_str() == "II").count(),
        "points": coords,
        "edges": edges,
    }))
}

/// Component counts over a range, computed on the calling thread.
pub fn k_table(max_ambient: u32, max_torus_dim: usize, max_degree: u32) -> Result<Value, String> {
    let range = SweepRange::new(max_ambient, 1, max_torus_dim.min(MAX_DEMO_TORUS_DIM), max_degree)
        .map_err(|e| e.to_string())?;
    let rows = range
        .specs()
        .iter()
        .map(|s| k_table_row(s, false))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(to_json(&rows))
}

fn to_js(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = modelReport)]
pub fn model_report_js(degrees: &str, ambient: u32, order: u32) -> Result<String, JsError> {
    to_js(model_report(degrees, ambient, order))
}

#[wasm_bindgen(js_name = fiberReport)]
pub fn fiber_report_js(degrees: &str, ambient: u32) -> Result<String, JsError> {
    to_js(fiber_report(degrees, ambient))
}

#[wasm_bindgen(js_name = kTable)]
pub fn k_table_js(max_ambient: u32, max_torus_dim: usize, max_degree: u32) -> Result<String, JsError> {
    to_js(k_table(max_ambient, max_torus_dim, max_degree))
}
