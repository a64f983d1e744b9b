//! Browser bindings: transform a model, check the involution, and compute
//! moduli dimensions. Every entry point takes and returns strings so the
//! page needs no glue beyond the generated module.

use nahm_core::higgs::parabolic_degree;
use nahm_core::model::{gallery, parse_document, ModelDocument, GALLERY};
use nahm_core::moduli::{moduli_dimension, SingularityProfile};
use nahm_core::transform::{double_transform_check, nahm_transform, render_matrix, TransformOptions};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn model(input: &str) -> Result<ModelDocument, String> {
    let input = input.trim();
    let doc = if input.starts_with('{') { parse_document(input) } else { gallery(input) };
    doc.map_err(|e| e.to_string())
}

fn ranks(list: &str) -> Result<Vec<usize>, String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("not a rank: {:?}", s)))
        .collect()
}

pub fn gallery_json() -> String {
    json!(GALLERY.iter().map(|(n, _)| *n).collect::<Vec<_>>()).to_string()
}

pub fn example_text(name: &str) -> Result<String, String> {
    let doc = gallery(name).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string_pretty(&doc).expect("documents serialize"))
}

/// Transform of a gallery name or a JSON model, as a JSON summary.
pub fn transform_json(input: &str) -> Result<String, String> {
    let doc = model(input)?;
    let h = doc.to_bundle().map_err(|e| e.to_string())?;
    let param = doc.param().map_err(|e| e.to_string())?;
    let t = nahm_transform(&h, &TransformOptions { param }).map_err(|e| e.to_string())?;
    let weights: Vec<_> = t
        .ledger
        .multiset()
        .into_iter()
        .map(|(s, w, m)| json!({ "site": s.to_string(), "weight": w.to_string(), "multiplicity": m }))
        .collect();
    Ok(json!({
        "sourceRank": t.source_rank,
        "rank": t.rank,
        "standard": t.standard.render(),
        "naive": t.naive.render(),
        "charPolyAffine": t.char_poly_affine.render("w", "ξ"),
        "transformedCurve": t.char_poly.render(),
        "matrix": t.matrix.as_ref().map(|m| render_matrix(&m.affine)),
        "weights": weights,
        "parabolicDegree": parabolic_degree(&h).to_string(),
        "dualEulerCharacteristic": t.degree_check.1.to_string(),
        "warnings": t.warnings,
        "notes": t.notes,
    })
    .to_string())
}

pub fn involution_json(input: &str) -> Result<String, String> {
    let h = model(input)?.to_bundle().map_err(|e| e.to_string())?;
    let r = double_transform_check(&h).map_err(|e| e.to_string())?;
    Ok(json!({
        "holds": r.holds(),
        "twice": r.twice.render(),
        "expected": r.expected.render(),
        "curves": r.char_poly_match,
        "entries": r.entries_match,
        "ledger": r.ledger_match,
        "degree": r.degree_match,
    })
    .to_string())
}

pub fn dimension(r: usize, res_ranks: &str, dual_res_ranks: &str) -> Result<i64, String> {
    let p = SingularityProfile::new(r, ranks(res_ranks)?, ranks(dual_res_ranks)?).map_err(|e| e.to_string())?;
    moduli_dimension(&p).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = galleryNames)]
pub fn gallery_names() -> String {
    gallery_json()
}

#[wasm_bindgen(js_name = galleryModel)]
pub fn gallery_model(name: &str) -> Result<String, JsError> {
    example_text(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn transform(input: &str) -> Result<String, JsError> {
    transform_json(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = involutionCheck)]
pub fn involution_check(input: &str) -> Result<String, JsError> {
    involution_json(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = moduliDimension)]
pub fn moduli_dim(r: usize, res_ranks: &str, dual_res_ranks: &str) -> Result<i64, JsError> {
    dimension(r, res_ranks, dual_res_ranks).map_err(|e| JsError::new(&e))
}
