//! Browser bindings for the demo page in `www/`. Each call returns the text
//! rendering of a report, or the error message.

use wasm_bindgen::prelude::*;

use rht_core::commands;
use rht_core::format::parse_presentation;
use rht_core::report::Report;

fn render(r: rht_core::Result<Report>) -> Result<String, JsValue> {
    r.map(|r| r.to_text()).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Scalability verdict and certificate for a descriptor like `csum(3*CP2)`.
#[wasm_bindgen]
pub fn classify(descriptor: &str) -> Result<String, JsValue> {
    render(commands::scalable(descriptor))
}

/// Cohomology ranks and representatives of a presentation through `cap`.
#[wasm_bindgen]
pub fn cohomology(presentation: &str, cap: u32) -> Result<String, JsValue> {
    render(parse_presentation(presentation).and_then(|p| commands::cohomology(&p, None, cap)))
}

/// Minimal model of a presentation through `cap`.
#[wasm_bindgen]
pub fn model(presentation: &str, cap: u32) -> Result<String, JsValue> {
    render(parse_presentation(presentation).and_then(|p| commands::model(&p, cap, false)))
}

/// Pairing of a model generator with a bracket, optionally rescaled by `scale`
/// (0 for none).
#[wasm_bindgen]
pub fn pair(presentation: &str, class: &str, bracket: &str, scale: i32) -> Result<String, JsValue> {
    let scale = (scale != 0).then_some(scale as i64);
    render(parse_presentation(presentation).and_then(|p| commands::pair(&p, class, bracket, scale, 13)))
}
