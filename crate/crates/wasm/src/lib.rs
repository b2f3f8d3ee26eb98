//! Browser bindings: Shirshov bracketing, normal forms with their rewrite
//! trace, and bounded composition checks. Each export wraps a plain function
//! returning JSON text so the logic is testable off the browser.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use lsgsb_core::gsb::{check_gsb, step_cap_for, GsbOptions};
use lsgsb_core::lyndon::{bracketing_of, is_lsbw, lyndon_factorize};
use lsgsb_core::opi::parse_system;
use lsgsb_core::rewrite::{RewriteStep, Strategy};
use lsgsb_core::words::parse_assoc;
use lsgsb_core::{Alphabet, OrderKind, WordOrder};

/// Largest bound the page accepts; the check runs on the UI thread.
pub const MAX_BOUND: u32 = 7;

fn order(s: &str) -> Result<Option<OrderKind>, String> {
    match s.trim() {
        "" => Ok(None),
        o => o.parse().map(Some).map_err(|e: lsgsb_core::Error| e.to_string()),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[derive(Serialize)]
struct BracketOut {
    word: String,
    lyndon_shirshov: bool,
    bracketing: Option<String>,
    /// Lyndon factors of the top level, non-increasing.
    factors: Vec<String>,
}

pub fn bracket_json(word: &str, alphabet: &str, ord: &str) -> Result<String, String> {
    let a = Alphabet::parse_list(alphabet).map_err(|e| e.to_string())?;
    let ord = order(ord)?.unwrap_or(OrderKind::Dl);
    let w = parse_assoc(word, &a).map_err(|e| e.to_string())?;
    let ok = is_lsbw(&w, &ord);
    let ps = w.primes();
    let factors = lyndon_factorize(ps, |x, y| ord.cmp_primes(x, y))
        .into_iter()
        .map(|r| lsgsb_core::BracketedWord::new(ps[r].to_vec()).to_text(&a))
        .collect();
    let bracketing = if ok { Some(bracketing_of(&w, &ord).map_err(|e| e.to_string())?.to_text(&a)) } else { None };
    Ok(to_json(&BracketOut { word: w.to_text(&a), lyndon_shirshov: ok, bracketing, factors }))
}

#[derive(Serialize)]
struct NfOut {
    input: String,
    normal_form: String,
    steps: Vec<RewriteStep>,
}

pub fn normal_form_json(system: &str, poly: &str, alphabet: &str, ord: &str) -> Result<String, String> {
    let a = Alphabet::parse_list(alphabet).map_err(|e| e.to_string())?;
    let spec = parse_system(system, &a, order(ord)?).map_err(|e| e.to_string())?;
    let sys = &spec.system;
    let f = sys.algebra().parse(poly, &a).map_err(|e| e.to_string())?;
    let cap = step_cap_for(f.len(), f.words().map(|w| w.degree()).max().unwrap_or(1));
    let mut steps = Vec::new();
    let g = sys
        .normal_form_with(&f, Strategy::LargestFirst, cap, Some(&mut steps), Some(&a))
        .map_err(|e| e.to_string())?;
    Ok(to_json(&NfOut { input: f.to_text(&a), normal_form: g.to_text(&a), steps }))
}

pub fn check_json(system: &str, bound: u32, alphabet: &str, ord: &str) -> Result<String, String> {
    if bound > MAX_BOUND {
        return Err(format!("bound {bound} exceeds {MAX_BOUND}"));
    }
    let a = Alphabet::parse_list(alphabet).map_err(|e| e.to_string())?;
    let spec = parse_system(system, &a, order(ord)?).map_err(|e| e.to_string())?;
    let mut opts = GsbOptions::new(bound);
    opts.crosschecks = bound <= 5;
    let report = check_gsb(&spec.system, &a, &opts).map_err(|e| e.to_string())?;
    Ok(to_json(&report))
}

#[wasm_bindgen]
pub fn bracket(word: &str, alphabet: &str, order: &str) -> Result<String, JsError> {
    bracket_json(word, alphabet, order).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = normalForm)]
pub fn normal_form(system: &str, poly: &str, alphabet: &str, order: &str) -> Result<String, JsError> {
    normal_form_json(system, poly, alphabet, order).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = checkSystem)]
pub fn check_system(system: &str, bound: u32, alphabet: &str, order: &str) -> Result<String, JsError> {
    check_json(system, bound, alphabet, order).map_err(|e| JsError::new(&e))
}
