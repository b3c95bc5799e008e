//! wasm-bindgen surface of the browser demo.
//!
//! Every export returns a JSON string (or throws a string); the page in
//! `www/` parses and renders. Build with
//! `wasm-pack build crates/mhqmo-wasm --target web --out-dir www/pkg`.

use wasm_bindgen::prelude::*;

mod demo;

fn to_js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

/// Available scenarios with dimensions and element counts.
#[wasm_bindgen]
pub fn scenarios() -> String {
    demo::scenarios()
}

/// Min-eigenvalue curve over eta in [0, 1] with the bisected threshold,
/// per-element eigenvalue curves and closed-form overlays.
#[wasm_bindgen(js_name = compatCurve)]
pub fn compat_curve(scenario: &str, steps: usize) -> Result<String, JsValue> {
    demo::compat_curve(scenario, steps).map_err(to_js)
}

/// Qubit quasi-probability table for a Bloch-vector state.
#[wasm_bindgen(js_name = quasiprobTable)]
pub fn quasiprob_table(eta: f64, bx: f64, by: f64, bz: f64) -> Result<String, JsValue> {
    demo::quasiprob_table(eta, bx, by, bz).map_err(to_js)
}

/// Family elements (entries, eigenvalues, verdict) at one eta.
#[wasm_bindgen(js_name = familyElements)]
pub fn family_elements(scenario: &str, eta: f64) -> Result<String, JsValue> {
    demo::family_elements(scenario, eta).map_err(to_js)
}
