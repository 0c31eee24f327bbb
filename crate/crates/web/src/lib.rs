//! Browser bindings: multiply expressions, check relations and print
//! ordering tables from a static page.

use drz::expr::parse_element;
use drz::render::{render_element, Format, Vars};
use drz::table::{emit_table, Target};
use drz::lattice::TotalOrder;
use drz::zalg::{verify_relations, Algebra, Backend, Family};
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_N: usize = 4;

fn algebra(n: usize) -> Result<Algebra, String> {
    if n == 0 || n > MAX_N {
        return Err(format!("n must be between 1 and {MAX_N}"));
    }
    Ok(Algebra::default_for(n))
}

/// The ordered form of an expression in `Z_n`.
pub fn normal_form(n: usize, expr: &str, format: &str, vars: &str) -> Result<String, String> {
    let alg = algebra(n)?;
    let format: Format = format.parse().map_err(|e: drz::Error| e.to_string())?;
    let vars: Vars = vars.parse().map_err(|e: drz::Error| e.to_string())?;
    let x = parse_element(expr, &alg, Backend::Rewrite).map_err(|e| e.to_string())?;
    Ok(render_element(&x, format, vars))
}

/// Residual counts per relation family, as JSON.
pub fn relation_summary(n: usize, backend: &str) -> Result<String, String> {
    let alg = algebra(n)?;
    let backend: Backend = backend.parse().map_err(|e: drz::Error| e.to_string())?;
    let reports = verify_relations(&alg, &Family::ALL, backend).map_err(|e| e.to_string())?;
    let families: Vec<_> = Family::ALL
        .iter()
        .map(|f| {
            let of: Vec<_> = reports.iter().filter(|r| r.family == *f).collect();
            let failed: Vec<String> = of.iter().filter(|r| !r.residual_zero()).map(|r| r.label()).collect();
            json!({ "family": f.tag(), "instances": of.len(), "failed": failed })
        })
        .collect();
    let pass = reports.iter().all(|r| r.residual_zero());
    Ok(json!({ "n": n, "pass": pass, "families": families }).to_string())
}

/// The complete ordering-relation list of `sl2`, `sl3` or `gl1`–`gl3`.
pub fn relation_table(target: &str, format: &str, vars: &str) -> Result<String, String> {
    let target: Target = target.parse().map_err(|e: drz::Error| e.to_string())?;
    let vars: Vars = vars.parse().map_err(|e: drz::Error| e.to_string())?;
    let order = if target == Target::Sl3 { TotalOrder::stord() } else { TotalOrder::default_for(target.n()) };
    let t = emit_table(target, &order, Backend::Rewrite).map_err(|e| e.to_string())?;
    match format.parse().map_err(|e: drz::Error| e.to_string())? {
        Format::Text => Ok(t.to_text(vars)),
        Format::Latex => Ok(t.to_latex(vars)),
        Format::Json => Ok(t.to_json().to_string()),
    }
}

#[wasm_bindgen(js_name = normalForm)]
pub fn normal_form_js(n: usize, expr: &str, format: &str, vars: &str) -> Result<String, JsError> {
    normal_form(n, expr, format, vars).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = relationSummary)]
pub fn relation_summary_js(n: usize, backend: &str) -> Result<String, JsError> {
    relation_summary(n, backend).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = relationTable)]
pub fn relation_table_js(target: &str, format: &str, vars: &str) -> Result<String, JsError> {
    relation_table(target, format, vars).map_err(|e| JsError::new(&e))
}
