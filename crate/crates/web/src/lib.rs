//! Browser bindings. Every export takes and returns plain strings so the page
//! needs no glue beyond the generated module; failures come back as
//! `{"error": "..."}`.

use bipers::bigraded::{parse_bpm_with_default, to_bpm};
use bipers::generators::{gallery, random_hook_sum, random_module, RandomMode, RandomSpec, GALLERY};
use bipers::{classify, hook_decompose, GridModule, Presentation, PrimeField};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse(text: &str, field: u32) -> Result<Presentation, String> {
    let field = PrimeField::new(field).map_err(|e| e.to_string())?;
    parse_bpm_with_default(text, field).map_err(|e| e.to_string())
}

fn respond(v: Result<Value, String>) -> String {
    v.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Classification report for a `.bpm` text.
#[wasm_bindgen]
pub fn classify_text(text: &str, field: u32) -> String {
    respond(parse(text, field).and_then(|p| {
        classify(&p)
            .map(|r| r.to_json(true))
            .map_err(|e| e.to_string())
    }))
}

/// Pointwise dimensions on the classification box, rows indexed by `x`,
/// plus the hook summands when there are any.
#[wasm_bindgen]
pub fn support_grid(text: &str, field: u32) -> String {
    respond(parse(text, field).and_then(|p| {
        let m = GridModule::for_classification(&p).map_err(|e| e.to_string())?;
        let g = m.grid();
        let dims: Vec<Vec<usize>> = (0..=g.nx)
            .map(|x| (0..=g.ny).map(|y| m.dim(bipers::Bigrade::new(x, y))).collect())
            .collect();
        let hooks = hook_decompose(&p).map_err(|e| e.to_string())?.map(|c| c.hooks);
        Ok(json!({ "nx": g.nx, "ny": g.ny, "dims": dims, "hooks": hooks }))
    }))
}

/// Newline-separated gallery names.
#[wasm_bindgen]
pub fn gallery_names() -> String {
    GALLERY.join("\n")
}

#[wasm_bindgen]
pub fn gallery_text(name: &str) -> String {
    gallery(name).map(|p| to_bpm(&p)).unwrap_or_else(|e| format!("# {e}\n"))
}

/// A seeded random module; `mode` is `arbitrary`, `free` or `hook-sum`.
#[wasm_bindgen]
pub fn random_text(mode: &str, seed: u32, field: u32) -> String {
    let Ok(field) = PrimeField::new(field) else {
        return format!("# field {field} is not a supported prime\n");
    };
    let mode = match mode {
        "free" => RandomMode::Free,
        "hook-sum" => RandomMode::HookSumScrambled,
        _ => RandomMode::Arbitrary,
    };
    let spec = RandomSpec {
        field,
        ..RandomSpec::new(mode, seed as u64)
    };
    if mode == RandomMode::HookSumScrambled {
        let (pres, hooks) = random_hook_sum(&spec);
        let list: Vec<String> = hooks.iter().map(|h| h.to_string()).collect();
        format!("# {}\n{}", list.join(" + "), to_bpm(&pres))
    } else {
        to_bpm(&random_module(&spec))
    }
}
