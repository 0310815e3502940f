//! `verify-suite`: every formula cross-checked against the module engine.

use std::collections::BTreeMap;

use kmweights::engine::{shapovalov_rank, Engine, ModulePresentation, QuotientModule, Relation};
use kmweights::enumerate::{
    enumerate_free, multiplicity_lower_bound, verify_nonvanishing, EnumerationMode,
};
use kmweights::formulas::{
    ascend_chain, compute_jv, extend_thm_a, free_complement_holds, interval_check, minkowski_holds,
    parabolic_verma_weights, simple_weights, slice_decompose, ChainTarget,
};
use kmweights::integrable::{integrable_weights, wj_stability_violation};
use kmweights::roots::{positive_roots, psp_witness};
use kmweights::weights::{depths_up_to, j_lambda};
use kmweights::{Gcm, HighestWeight, NodeSet, Result};
use serde_json::{json, Value};

use crate::{input, Ctx, Report};

const DEFAULT_HEIGHT: u32 = 6;

fn builtin() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("A2", "0,0", "[[[0,2],[1,1]]]"),
        ("A1xA1", "0,0", "[[[0,1],[1,1]]]"),
        ("A1", "3", "[]"),
        ("A2", "1,0", "[[[0,2]]]"),
        ("B2", "1,-1/2", "[[[0,2]]]"),
        ("A3", "0,1,0", "[[[1,2]]]"),
        ("G2", "0,1", "[[[1,2]]]"),
    ]
}

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(name: &'static str, r: Result<Option<String>>) -> Outcome {
    match r {
        Ok(None) => Outcome {
            name,
            passed: true,
            detail: String::new(),
        },
        Ok(Some(d)) => Outcome {
            name,
            passed: false,
            detail: d,
        },
        Err(e) => Outcome {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn checks(gcm: &Gcm, engine: &Engine, q: &QuotientModule) -> Vec<Outcome> {
    let n = gcm.rank();
    let h = q.height();
    let lambda = q.lambda().clone();
    let jl = j_lambda(&lambda);
    let wt = q.weights();
    let all = NodeSet::full(n);
    let mut out = Vec::new();

    out.push(outcome(
        "extension from the J_lambda-slice",
        (|| {
            let ext = extend_thm_a(gcm, &wt.restrict_support(jl), h)?;
            Ok((ext != wt).then(|| "extension differs from the module weights".to_string()))
        })(),
    ));

    let jv = compute_jv(gcm, q);
    out.push(outcome(
        "Minkowski decomposition iff J contains J_V",
        (|| {
            let jv = jv.clone()?.jv;
            for j in all.subsets() {
                let holds = minkowski_holds(gcm, q, j, h)?;
                if holds != jv.is_subset(j) {
                    return Ok(Some(format!(
                        "J = {j:?}: decomposition {holds}, J_V = {jv:?}"
                    )));
                }
                if holds != free_complement_holds(gcm, q, j, h)? {
                    return Ok(Some(format!("J = {j:?}: free-complement form disagrees")));
                }
            }
            Ok(None)
        })(),
    ));

    out.push(outcome(
        "interval classification",
        (|| {
            for j in jl.subsets() {
                interval_check(engine, q, j)?;
            }
            Ok(None)
        })(),
    ));

    out.push(outcome(
        "slices cover the weights",
        (|| {
            let jv = jv.clone()?.jv;
            for j in [jv, all] {
                let slices = slice_decompose(gcm, q, j, h)?;
                let total: usize = slices.values().map(|s| s.len()).sum();
                if total != wt.len() {
                    return Ok(Some(format!(
                        "J = {j:?}: slices hold {total} of {} weights",
                        wt.len()
                    )));
                }
            }
            Ok(None)
        })(),
    ));

    out.push(outcome(
        "ascent chains exist",
        (|| {
            for mu in wt.iter() {
                ascend_chain(gcm, q, mu, all, ChainTarget::IndependentSupport)?;
            }
            Ok(None)
        })(),
    ));

    out.push(outcome(
        "parabolic Verma routes match the engine",
        (|| {
            for j in jl.subsets() {
                if j.iter().any(|i| lambda.dominant_at(i).unwrap() + 1 > h) {
                    continue;
                }
                let f = parabolic_verma_weights(gcm, &lambda, j, h)?;
                let m = QuotientModule::new(
                    engine,
                    &ModulePresentation::parabolic_verma(lambda.clone(), j)?,
                    h,
                )?;
                if f.depths != m.weights().depths {
                    return Ok(Some(format!("J = {j:?}")));
                }
            }
            Ok(None)
        })(),
    ));

    out.push(outcome(
        "simple weights match Shapovalov ranks",
        (|| {
            let s = simple_weights(gcm, &lambda, h)?;
            for d in depths_up_to(n, h, all) {
                if s.contains(&d) != (shapovalov_rank(engine, &lambda, &d)? > 0) {
                    return Ok(Some(format!("depth {:?}", d.0)));
                }
            }
            Ok(None)
        })(),
    ));

    out.push(outcome(
        "integrable weights are W_J-stable",
        (|| {
            for j in jl.subsets() {
                let w = integrable_weights(gcm, &lambda, j, h)?;
                if let Some((d, i)) = wj_stability_violation(gcm, &w, j) {
                    return Ok(Some(format!(
                        "J = {j:?}: string at node {i} through {:?}",
                        d.0
                    )));
                }
            }
            Ok(None)
        })(),
    ));

    out.push(outcome(
        "parabolic splitting of roots",
        (|| {
            let rs = positive_roots(gcm, h);
            for i in all.subsets().filter(|i| !i.is_empty()) {
                for r in rs.roots().iter().filter(|r| r.depth.height_on(i) > 1) {
                    psp_witness(&rs, i, &r.depth)?;
                }
            }
            Ok(None)
        })(),
    ));

    if lambda.0.iter().all(|x| x.as_nonneg_int().is_some()) {
        out.push(outcome(
            "free-direction plans and bounds",
            (|| {
                let jv = jv.clone()?.jv;
                let free = jv.complement(n);
                if free.is_empty() {
                    return Ok(None);
                }
                let nodes = free.to_vec();
                let mut c = vec![0u32; nodes.len()];
                loop {
                    if c.iter().sum::<u32>() <= h {
                        let cm: BTreeMap<usize, u32> =
                            nodes.iter().copied().zip(c.iter().copied()).collect();
                        for p in
                            enumerate_free(gcm, &lambda, free, &cm, EnumerationMode::Exhaustive)?
                        {
                            if !verify_nonvanishing(q, &p)? {
                                return Ok(Some(format!(
                                    "ordering {:?} vanishes for c = {:?}",
                                    p.ordering, c
                                )));
                            }
                        }
                        let b = multiplicity_lower_bound(gcm, &lambda, jv, &cm, Some(engine))?;
                        if b.bound > q.dim(&b.mu) {
                            return Ok(Some(format!(
                                "bound {} exceeds dim {} at {:?}",
                                b.bound,
                                q.dim(&b.mu),
                                b.mu.0
                            )));
                        }
                    }
                    let mut k = 0;
                    while k < c.len() && c[k] == 2 {
                        c[k] = 0;
                        k += 1;
                    }
                    if k == c.len() {
                        break;
                    }
                    c[k] += 1;
                }
                Ok(None)
            })(),
        ));
    }
    out
}

pub(crate) fn run(ctx: &Ctx) -> Result<Report> {
    let h = ctx.common.height.unwrap_or(DEFAULT_HEIGHT);
    let modules: Vec<(String, Gcm, HighestWeight, Vec<Relation>)> = if ctx.common.lambda.is_some() {
        let gcm = ctx.gcm()?;
        let lambda = ctx.lambda(&gcm)?;
        let rels = input::relations(ctx.common.relations.as_deref(), gcm.rank())?;
        let label = ctx.common.algebra.clone().unwrap_or_default();
        vec![(label, gcm, lambda, rels)]
    } else {
        builtin()
            .into_iter()
            .map(|(a, l, r)| {
                let gcm = input::algebra(a)?;
                let lambda = input::lambda(l, &gcm)?;
                let rels = input::relations(Some(r), gcm.rank())?;
                Ok((a.to_string(), gcm, lambda, rels))
            })
            .collect::<Result<_>>()?
    };
    let mut list = Vec::new();
    let mut text = String::new();
    let mut failed = 0;
    for (label, gcm, lambda, rels) in modules {
        let engine = Engine::new(&gcm)?;
        let pres = ModulePresentation::new(lambda.clone(), rels.clone());
        let q = QuotientModule::new(&engine, &pres, h)?;
        let name = format!(
            "{label} λ={lambda} relations={}",
            serde_json::to_string(&rels).unwrap()
        );
        for o in checks(&gcm, &engine, &q) {
            if !o.passed {
                failed += 1;
            }
            text.push_str(&format!(
                "[{}] {name}: {}{}\n",
                if o.passed { "PASS" } else { "FAIL" },
                o.name,
                if o.detail.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", o.detail)
                }
            ));
            list.push(
                json!({ "module": name, "check": o.name, "passed": o.passed, "detail": o.detail }),
            );
        }
    }
    let total = list.len();
    let j: Value =
        json!({ "verified_height": h, "checks": list, "failed": failed, "total": total });
    Ok(Report {
        json: j,
        text,
        status: if failed > 0 { 3 } else { 0 },
    })
}
