//! Browser bindings for the demo page in `www/`.
//!
//! Each export returns a JSON string. The work happens in plain functions so
//! the same code runs under native tests.

use serde_json::{json, Value};
use simcores::abacus::render::render_svg;
use simcores::counting::{count, Method};
use simcores::oddeven::oddeven_table;
use simcores::{AbacusFunction, DiffSet, Partition, Variant};
use wasm_bindgen::prelude::*;

/// Enumeration inside a browser tab stays small.
pub const BROWSER_BRUTE_LIMIT: usize = 11;
/// Recurrence and series routes are cheap; cap only the output size.
pub const MAX_N: usize = 200;

/// Accepts either `n:f0,f1,...` or `n|a,b,c` (a partition to encode).
pub fn abacus_view(input: &str) -> Result<Value, String> {
    let f = match input.split_once('|') {
        Some((n, parts)) => {
            let n: usize = n.trim().parse().map_err(|_| format!("`{}` is not a row count", n.trim()))?;
            let parts = parts
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>().map_err(|_| format!("`{}` is not a part", s.trim())))
                .collect::<Result<Vec<_>, _>>()?;
            let lambda = Partition::from_unsorted(parts).map_err(|e| e.to_string())?;
            AbacusFunction::encode(&lambda, n).map_err(|e| e.to_string())?
        }
        None => AbacusFunction::parse_spec(input.trim()).map_err(|e| e.to_string())?,
    };
    let lambda = f.decode();
    let stats = f.statistics();
    Ok(json!({
        "abacus": f.to_string(),
        "partition": lambda.parts(),
        "gaps": f.gap_lengths(),
        "largest": stats.largest,
        "length": stats.length,
        "size": stats.size,
        "svg": render_svg(&f),
    }))
}

pub fn count_view(set: &str, n_max: usize, variant: &str, method: &str) -> Result<Value, String> {
    if n_max > MAX_N {
        return Err(format!("n is capped at {MAX_N} here"));
    }
    let m = DiffSet::parse(set).map_err(|e| e.to_string())?;
    let variant: Variant = variant.parse()?;
    let method: Method = method.parse()?;
    let report = count(&m, n_max, variant, method, BROWSER_BRUTE_LIMIT).map_err(|e| e.to_string())?;
    serde_json::to_value(&report).map_err(|e| e.to_string())
}

pub fn oddeven_view(n_max: usize) -> Result<Value, String> {
    let rows = oddeven_table(n_max, BROWSER_BRUTE_LIMIT).map_err(|e| e.to_string())?;
    serde_json::to_value(rows).map_err(|e| e.to_string())
}

fn export(result: Result<Value, String>) -> Result<String, JsError> {
    result.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = abacus)]
pub fn abacus_js(input: &str) -> Result<String, JsError> {
    export(abacus_view(input))
}

#[wasm_bindgen(js_name = countCores)]
pub fn count_js(set: &str, n_max: usize, variant: &str, method: &str) -> Result<String, JsError> {
    export(count_view(set, n_max, variant, method))
}

#[wasm_bindgen(js_name = oddEvenTable)]
pub fn oddeven_js(n_max: usize) -> Result<String, JsError> {
    export(oddeven_view(n_max))
}
