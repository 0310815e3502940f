//! Browser bindings: a weight diagram, the J_V / Minkowski table, and enumeration plans.
//!
//! Every export takes plain strings and returns JSON, so the page needs no glue beyond
//! what `wasm-pack build --target web` generates. The `*_json` functions are the same
//! operations for native callers and tests.

use std::collections::BTreeMap;

use kmweights::engine::{Engine, ModulePresentation, QuotientModule, Relation};
use kmweights::enumerate::{enumerate_free, EnumerationMode};
use kmweights::formulas::{compute_jv, minkowski_check, simple_weights};
use kmweights::{AlgebraDescriptor, Gcm, HighestWeight, NodeSet};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// The engine is only asked for small pictures.
const MAX_HEIGHT: u32 = 10;

type Res<T> = std::result::Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn algebra(s: &str) -> Res<Gcm> {
    let t = s.trim();
    if let Ok(m) = serde_json::from_str::<Vec<Vec<i64>>>(t) {
        return Gcm::new(m).map_err(err);
    }
    if t.starts_with('{') {
        let d: AlgebraDescriptor = serde_json::from_str(t).map_err(err)?;
        return d.build().map_err(err);
    }
    Gcm::from_type(t).map_err(err)
}

fn lambda(s: &str, gcm: &Gcm) -> Res<HighestWeight> {
    let l = HighestWeight::parse(s.trim()).map_err(err)?;
    l.check_rank(gcm).map_err(err)?;
    Ok(l)
}

fn nodes(s: &str, n: usize) -> Res<NodeSet> {
    let mut out = NodeSet::EMPTY;
    for p in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = p.parse().map_err(|_| format!("bad node {p:?}"))?;
        if i >= n {
            return Err(format!("node {i} out of range"));
        }
        out.insert(i);
    }
    Ok(out)
}

fn module(alg: &str, lam: &str, rels: &str, height: u32) -> Res<(Gcm, QuotientModule)> {
    if height == 0 || height > MAX_HEIGHT {
        return Err(format!("height must be between 1 and {MAX_HEIGHT}"));
    }
    let gcm = algebra(alg)?;
    let l = lambda(lam, &gcm)?;
    let rels: Vec<Relation> = if rels.trim().is_empty() {
        Vec::new()
    } else {
        serde_json::from_str(rels).map_err(err)?
    };
    let engine = Engine::new(&gcm).map_err(err)?;
    let q = QuotientModule::new(&engine, &ModulePresentation::new(l, rels), height).map_err(err)?;
    Ok((gcm, q))
}

/// Weights of the presented module with their dimensions, and the weights of `L(lambda)`.
pub fn weight_diagram_json(alg: &str, lam: &str, rels: &str, height: u32) -> Res<String> {
    let (gcm, q) = module(alg, lam, rels, height)?;
    let simple = simple_weights(&gcm, q.lambda(), height).map_err(err)?;
    let points: Vec<_> = q
        .weights()
        .iter()
        .map(|d| json!({ "depth": d, "dim": q.dim(d), "simple": simple.contains(d) }))
        .collect();
    Ok(json!({ "rank": gcm.rank(), "verified_height": height, "points": points }).to_string())
}

/// `J_V` and, for every `J`, whether the Minkowski decomposition holds.
pub fn jv_table_json(alg: &str, lam: &str, rels: &str, height: u32) -> Res<String> {
    let (gcm, q) = module(alg, lam, rels, height)?;
    let jv = compute_jv(&gcm, &q).map_err(err)?;
    let rows = gcm
        .all_nodes()
        .subsets()
        .map(|j| {
            let r = minkowski_check(&gcm, &q, j, height).map_err(err)?;
            Ok(json!({ "J": j, "holds": r.holds, "contains_jv": jv.jv.is_subset(j), "counterexample": r.counterexample }))
        })
        .collect::<Res<Vec<_>>>()?;
    Ok(
        json!({ "jv": jv.jv, "witnesses": jv.witnesses, "rows": rows, "verified_height": height })
            .to_string(),
    )
}

/// Plans for exponents given positionally over `free` in increasing order.
pub fn enumerate_json(alg: &str, lam: &str, free: &str, c: &str, exhaustive: bool) -> Res<String> {
    let gcm = algebra(alg)?;
    let l = lambda(lam, &gcm)?;
    let free = nodes(free, gcm.rank())?;
    let cs: Vec<u32> = c
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| format!("bad exponent {p:?}")))
        .collect::<Res<_>>()?;
    if cs.len() != free.len() {
        return Err(format!(
            "{} exponents for {} free nodes",
            cs.len(),
            free.len()
        ));
    }
    let c: BTreeMap<usize, u32> = free.iter().zip(cs).collect();
    let mode = if exhaustive {
        EnumerationMode::Exhaustive
    } else {
        EnumerationMode::Deterministic
    };
    let plans = enumerate_free(&gcm, &l, free, &c, mode).map_err(err)?;
    let plans: Vec<_> = plans
        .iter()
        .map(|p| {
            json!({
                "ordering": p.ordering, "terminal": p.terminal_independent,
                "dot_set": p.dot_set, "word": p.word(),
            })
        })
        .collect();
    Ok(json!({ "plans": plans }).to_string())
}

#[wasm_bindgen]
pub fn weight_diagram(alg: &str, lam: &str, rels: &str, height: u32) -> Result<String, JsError> {
    weight_diagram_json(alg, lam, rels, height).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn jv_table(alg: &str, lam: &str, rels: &str, height: u32) -> Result<String, JsError> {
    jv_table_json(alg, lam, rels, height).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn enumerate(
    alg: &str,
    lam: &str,
    free: &str,
    c: &str,
    exhaustive: bool,
) -> Result<String, JsError> {
    enumerate_json(alg, lam, free, c, exhaustive).map_err(|e| JsError::new(&e))
}
