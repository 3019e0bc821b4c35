//! Browser bindings. Each export takes a short text spec and returns JSON.
//!
//! Digraph specs: `complete(k,m)`, `paley(p)`, `incidence(p,d)`,
//! `de_bruijn(k,s)`, `random(n,k,seed)`, `line(<graph>)` where `<graph>` is a
//! built-in graph name such as `petersen` or `hypercube(3)`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use dregular::constructions::*;
use dregular::spectral::{classify_spectrum, ihara_predicted_spectrum, line_digraph_blocks};
use dregular::walks::{cutoff_profile, tv_bound_curve};
use dregular::Digraph;

/// Larger inputs make the dense solver too slow for an interactive page.
pub const MAX_VERTICES: usize = 1024;

fn numbers(spec: &str, args: &str, want: usize) -> Result<Vec<u64>, String> {
    let v: Vec<u64> = args
        .split(',')
        .map(|a| a.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad arguments in `{spec}`"))?;
    if v.len() != want {
        return Err(format!("`{spec}` takes {want} argument(s)"));
    }
    Ok(v)
}

pub fn parse_digraph(spec: &str) -> Result<Digraph, String> {
    let spec = spec.trim();
    let (head, rest) = spec
        .split_once('(')
        .ok_or_else(|| format!("expected family(args), got `{spec}`"))?;
    let args = rest
        .strip_suffix(')')
        .ok_or_else(|| format!("missing `)` in `{spec}`"))?;
    let d = match head.trim() {
        "complete" => {
            let a = numbers(spec, args, 2)?;
            complete_digraph(a[0] as usize, a[1] as usize)
        }
        "paley" => paley_digraph(numbers(spec, args, 1)?[0]),
        "incidence" => {
            let a = numbers(spec, args, 2)?;
            projective_incidence(a[0], a[1] as usize)
        }
        "de_bruijn" => {
            let a = numbers(spec, args, 2)?;
            de_bruijn(a[0] as usize, a[1] as usize)
        }
        "random" => {
            let a = numbers(spec, args, 3)?;
            random_regular_digraph(a[0] as usize, a[1] as usize, a[2])
        }
        "line" => builtin_graph(args).and_then(|g| line_digraph(&g)).map(|(d, _)| d),
        other => return Err(format!("unknown family `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    if d.n() > MAX_VERTICES {
        return Err(format!("{} vertices; the demo stops at {MAX_VERTICES}", d.n()));
    }
    Ok(d)
}

/// Eigenvalues, trivial positions, rho0 and the Ramanujan verdict.
pub fn spectrum_json(spec: &str) -> Result<Value, String> {
    let d = parse_digraph(spec)?;
    let r = classify_spectrum(&d).map_err(|e| e.to_string())?;
    let mut j = r.to_json();
    j["spec"] = json!(spec);
    j["sqrt_k"] = json!((r.k as f64).sqrt());
    Ok(j)
}

/// Line digraph of a built-in graph: block certificate and the spectrum
/// predicted from the graph next to the computed one.
pub fn line_certificate_json(graph: &str) -> Result<Value, String> {
    let g = builtin_graph(graph).map_err(|e| e.to_string())?;
    let b = line_digraph_blocks(&g).map_err(|e| e.to_string())?;
    let (d, _) = line_digraph(&g).map_err(|e| e.to_string())?;
    if d.n() > MAX_VERTICES {
        return Err(format!("{} arcs; the demo stops at {MAX_VERTICES}", d.n()));
    }
    let computed = classify_spectrum(&d).map_err(|e| e.to_string())?;
    let predicted: Vec<[f64; 2]> = ihara_predicted_spectrum(&g).iter().map(|z| [z.re, z.im]).collect();
    Ok(json!({
        "graph": graph,
        "n": b.n,
        "k": b.k,
        "blocks": b.blocks.len(),
        "covered_dim": b.covered_dim(),
        "residual": b.residual,
        "orthogonality": b.orthogonality,
        "max_char_poly_error": b.max_char_poly_error(),
        "predicted": predicted,
        "computed": computed.to_json()["eigenvalues"],
        "rho0": computed.rho0,
        "ramanujan": computed.ramanujan,
    }))
}

/// Total variation from uniform along the walk from `start`, with the
/// spectral upper bound curve.
pub fn walk_json(spec: &str, start: usize, lmax: usize) -> Result<Value, String> {
    let d = parse_digraph(spec)?;
    let p = cutoff_profile(&d, start, lmax).map_err(|e| e.to_string())?;
    let bound = tv_bound_curve(&d, lmax).map_err(|e| e.to_string())?;
    let mut j = p.summary_json(1);
    j["tv"] = json!(p.steps.iter().map(|s| s.tv).collect::<Vec<_>>());
    j["support"] = json!(p.steps.iter().map(|s| s.support).collect::<Vec<_>>());
    j["tv_bound"] = json!(bound);
    Ok(j)
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn spectrum(spec: &str) -> Result<String, JsValue> {
    to_js(spectrum_json(spec))
}

#[wasm_bindgen]
pub fn line_certificate(graph: &str) -> Result<String, JsValue> {
    to_js(line_certificate_json(graph))
}

#[wasm_bindgen]
pub fn walk(spec: &str, start: usize, lmax: usize) -> Result<String, JsValue> {
    to_js(walk_json(spec, start, lmax))
}
