//! WebAssembly bindings for the static page in `www/`.
//!
//! Every export returns a JSON string. Failures come back as
//! `{"error": {"kind": ..., "message": ...}}` instead of a thrown exception so
//! the page can show them inline.

use eaqecc::bounds::{ea_report, hamming_efficiency};
use eaqecc::code::rates;
use eaqecc::error_model::{compose, curve, named_polynomial, pseudothreshold};
use eaqecc::families::{family, resolve_code, reversed_scan_eahb, scan_eahb};
use eaqecc::{Degeneracy, EaCode, Error};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(result: Result<Value, Error>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": { "kind": e.kind(), "message": e.to_string() } }).to_string(),
    }
}

fn degeneracy(flag: &str) -> Degeneracy {
    match flag {
        "degenerate" => Degeneracy::Degenerate,
        "nondegenerate" => Degeneracy::Nondegenerate,
        _ => Degeneracy::Unknown,
    }
}

pub fn check(text: &str, flag: &str) -> Result<Value, Error> {
    let code: EaCode = resolve_code(text)?;
    let code = match degeneracy(flag) {
        Degeneracy::Unknown => code,
        d => code.with_degeneracy(d),
    };
    let summary = rates(&code);
    let [r, r_e, r_n, delta] = summary.truncated();
    Ok(json!({
        "code": code,
        "rates": { "r": r, "r_e": r_e, "r_n": r_n, "delta": delta },
        "phi": hamming_efficiency(&code).ok(),
        "bounds": ea_report(&code),
    }))
}

pub fn threshold_curve(outer: &str, inner: &str, steps: usize) -> Result<Value, Error> {
    let mut f = named_polynomial(outer)?;
    if !inner.is_empty() {
        f = compose(&f, &named_polynomial(inner)?);
    }
    let points = curve(&f, 0.0, 0.5, steps.max(2))?;
    Ok(json!({
        "label": f.label(),
        "polynomial": f.to_string(),
        "pseudothreshold": pseudothreshold(&f, 1e-9)?,
        "points": points,
    }))
}

pub fn scan(family_name: &str, fixed: &str, n_min: u64, n_max: u64, reversed: bool) -> Result<Value, Error> {
    let spec = family(family_name)?;
    let code = resolve_code(fixed)?;
    let result = if reversed {
        reversed_scan_eahb(&code, &spec, n_min..=n_max)?
    } else {
        scan_eahb(&spec, &code, n_min..=n_max)?
    };
    let rows: Vec<Value> = result
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "notation": r.code.to_string(),
                "status": r.status.label(),
                "phi": r.phi,
            })
        })
        .collect();
    Ok(json!({ "onset": result.onset, "rows": rows }))
}

/// Rates, Hamming efficiency and the bound report for one EA code or
/// constant name. `degeneracy` is "degenerate", "nondegenerate" or anything
/// else for unknown.
#[wasm_bindgen]
pub fn check_code(text: &str, degeneracy: &str) -> String {
    respond(check(text, degeneracy))
}

/// Sampled `p_L(p)` on `[0, 0.5]` with its pseudothreshold. Leave `inner`
/// empty for a single component.
#[wasm_bindgen]
pub fn threshold_curves(outer: &str, inner: &str, steps: usize) -> String {
    respond(threshold_curve(outer, inner, steps))
}

#[wasm_bindgen]
pub fn eahb_scan(family_name: &str, fixed: &str, n_min: u32, n_max: u32, reversed: bool) -> String {
    respond(scan(family_name, fixed, n_min.into(), n_max.into(), reversed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn check_code_reports_bounds() {
        let v = parse(check_code("[[8,1,5;1]]", "degenerate"));
        assert_eq!(v["code"]["degeneracy"], "degenerate");
        let hamming = v["bounds"]
            .as_array()
            .unwrap()
            .iter()
            .find(|b| b["bound"] == "ea_hamming")
            .unwrap();
        assert_eq!(hamming["status"], "violated");
        assert!(v["phi"].as_f64().unwrap() > 1.0);
    }

    #[test]
    fn check_code_accepts_constant_names() {
        let v = parse(check_code("C4", ""));
        assert_eq!(v["code"]["notation"], "[[9,1,7;4]]");
    }

    #[test]
    fn errors_are_json() {
        let v = parse(check_code("[[3,1", ""));
        assert_eq!(v["error"]["kind"], "syntax");
        let v = parse(threshold_curves("seven", "", 10));
        assert_eq!(v["error"]["kind"], "unknown_name");
    }

    #[test]
    fn threshold_curve_samples() {
        let v = parse(threshold_curves("four131", "five13", 11));
        assert_eq!(v["points"].as_array().unwrap().len(), 11);
        let p = v["pseudothreshold"].as_f64().unwrap();
        assert!((p - 0.1622).abs() < 5e-4);
    }

    #[test]
    fn scan_onset() {
        let v = parse(eahb_scan("rep_even", "C4", 4, 60, false));
        assert_eq!(v["onset"], 52);
        let v = parse(eahb_scan("rep_odd", "C1", 3, 21, true));
        assert!(v["onset"].is_null());
        let v = parse(eahb_scan("rep_odd", "C1", 4, 4, false));
        assert_eq!(v["error"]["kind"], "empty_range");
    }
}
