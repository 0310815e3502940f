mod common;

use std::collections::BTreeMap;

use common::{dv, random_word};
use kmweights::engine::{shapovalov_rank, Engine, ModulePresentation, QuotientModule};
use kmweights::enumerate::{
    enumerate_free, multiplicity_lower_bound, verify_nonvanishing, EnumerationMode,
};
use kmweights::formulas::{
    compute_jv, extend_thm_a, free_complement_holds, minkowski_holds, parabolic_verma_weights,
    simple_weights,
};
use kmweights::integrable::{integrable_closure, wj_stability_violation};
use kmweights::roots::{coroot_pairing, finite_root_system};
use kmweights::weights::{cone_subtract, depths_up_to, j_lambda};
use kmweights::{DepthVector, Error, Gcm, HighestWeight, NodeSet, Rat, TruncatedWeightSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const H: u32 = 6;

fn pairing_value() -> impl Strategy<Value = Rat> {
    prop::sample::select(vec!["-2", "-1", "-1/2", "0", "1", "2", "3/2"])
        .prop_map(|s| s.parse().unwrap())
}

fn finite_label() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A1", "A2", "B2", "G2", "A1xA1", "A3"])
}

/// A random engine-backed quotient: algebra, lambda, and up to two monomial relations.
fn module() -> impl Strategy<Value = Option<(Gcm, Engine, QuotientModule)>> {
    (
        finite_label(),
        prop::collection::vec(pairing_value(), 3),
        0usize..3,
        any::<u64>(),
    )
        .prop_map(|(label, ps, k, seed)| {
            let gcm = Gcm::from_type(label).unwrap();
            let n = gcm.rank();
            let engine = Engine::new(&gcm).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rels = (0..k)
                .map(|_| ModulePresentation::word(&random_word(&mut rng, n, 4)))
                .collect();
            let p = ModulePresentation::new(HighestWeight::new(ps[..n].to_vec()), rels);
            match QuotientModule::new(&engine, &p, H) {
                Ok(q) => Some((gcm, engine, q)),
                Err(Error::ZeroModule) => None,
                Err(e) => panic!("{e}"),
            }
        })
}

fn depth_set(n: usize, max: u32) -> impl Strategy<Value = Vec<DepthVector>> {
    prop::collection::vec(prop::collection::vec(0..=max, n), 0..4)
        .prop_map(|v| v.into_iter().map(DepthVector).collect())
}

fn generators(n: usize) -> impl Strategy<Value = Vec<DepthVector>> {
    prop::collection::vec(prop::collection::vec(0u32..=2, n), 0..3).prop_map(|v| {
        v.into_iter()
            .map(DepthVector)
            .filter(|d| !d.is_zero())
            .collect()
    })
}

fn set(n: usize, ds: &[DepthVector]) -> TruncatedWeightSet {
    TruncatedWeightSet::from_depths(HighestWeight::zero(n), 8, ds.iter().cloned())
}

/// Generalized Cartan matrices of rank 2 or 3 with entries down to -3.
fn gcm_strategy() -> impl Strategy<Value = Gcm> {
    prop::collection::vec(0i64..=3, 3).prop_flat_map(|upper| {
        prop::collection::vec(1i64..=3, 3).prop_map(move |lower| {
            let mut a = vec![vec![2i64; 3]; 3];
            let pairs = [(0, 1), (0, 2), (1, 2)];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                a[i][j] = -upper[k];
                a[j][i] = if upper[k] == 0 { 0 } else { -lower[k] };
            }
            Gcm::new(a).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cone_is_monotone_and_idempotent(s in depth_set(2, 3), extra in depth_set(2, 3), g in generators(2), g2 in generators(2)) {
        let a = cone_subtract(&set(2, &s), &g, 8).unwrap();
        let all: Vec<DepthVector> = s.iter().chain(&extra).cloned().collect();
        let b = cone_subtract(&set(2, &all), &g, 8).unwrap();
        prop_assert!(a.depths.is_subset(&b.depths));
        let gg: Vec<DepthVector> = g.iter().chain(&g2).cloned().collect();
        let c = cone_subtract(&set(2, &s), &gg, 8).unwrap();
        prop_assert!(a.depths.is_subset(&c.depths));
        prop_assert_eq!(cone_subtract(&a, &g, 8).unwrap(), a);
    }

    #[test]
    fn integrable_weights_are_wj_stable(gcm in gcm_strategy(), ps in prop::collection::vec(0i64..3, 3), jbits in 0u64..8) {
        let lambda = HighestWeight::from_ints(&ps);
        let j = NodeSet::from_bits(jbits);
        let c = integrable_closure(&gcm, &lambda, j, 7).unwrap();
        prop_assert_eq!(wj_stability_violation(&gcm, &c.weights, j), None);
        for d in c.weights.iter() {
            prop_assert!(d.support().is_subset(j));
            // every member below the top has a string top above it
            if let Some((parent, i)) = c.certificate.get(d) {
                prop_assert!(c.weights.contains(parent));
                prop_assert!(d.get(*i) > parent.get(*i));
            } else {
                prop_assert!(d.is_zero());
            }
        }
        prop_assert_eq!(integrable_closure(&gcm, &lambda, NodeSet::EMPTY, 7).unwrap().weights.len(), 1);
    }

    #[test]
    fn formula_routes_agree_in_any_type(gcm in gcm_strategy(), ps in prop::collection::vec(0i64..3, 3), jbits in 0u64..8) {
        // the three computations inside must agree or this returns an error
        let w = parabolic_verma_weights(&gcm, &HighestWeight::from_ints(&ps), NodeSet::from_bits(jbits), 6).unwrap();
        prop_assert_eq!(w.reaching_violation(), None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engine_weight_sets_reach_and_satisfy_strings(m in module()) {
        let Some((gcm, _, q)) = m else { return Ok(()) };
        let wt = q.weights();
        prop_assert_eq!(wt.reaching_violation(), None);
        let rs = finite_root_system(&gcm).unwrap();
        for mu in wt.iter() {
            for a in rs.depths() {
                let p = coroot_pairing(&gcm, q.lambda(), mu, &a).unwrap();
                if p < Rat::ZERO {
                    continue;
                }
                for k in 1..=p.ceil_int() as u32 {
                    let nu = mu.scaled_add(&a, k);
                    if nu.height() <= H {
                        prop_assert!(wt.contains(&nu), "{:?} - {}{:?} missing", mu, k, a);
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_laws(m in module()) {
        let Some((gcm, _, q)) = m else { return Ok(()) };
        let n = gcm.rank();
        let wt = q.weights();
        let jl = j_lambda(q.lambda());
        // extension from the J_lambda slice
        prop_assert_eq!(extend_thm_a(&gcm, &wt.restrict_support(jl), H).unwrap(), wt.clone());
        let jv = compute_jv(&gcm, &q).unwrap().jv;
        let mut holds_for = Vec::new();
        for j in NodeSet::full(n).subsets() {
            let holds = minkowski_holds(&gcm, &q, j, H).unwrap();
            prop_assert_eq!(holds, jv.is_subset(j));
            prop_assert_eq!(holds, free_complement_holds(&gcm, &q, j, H).unwrap());
            if holds {
                holds_for.push(j);
            }
        }
        // monotone in J
        for &j in &holds_for {
            for k in NodeSet::full(n).subsets().filter(|k| j.is_subset(*k)) {
                prop_assert!(holds_for.contains(&k));
            }
        }
        // free simple directions outside J_V
        for d in depths_up_to(n, H, jv.complement(n)) {
            prop_assert!(wt.contains(&d));
        }
        // the J_lambda-slice can be pushed down freely along J_lambda^c
        for mu in wt.restrict_support(jl).iter() {
            for xi in depths_up_to(n, H - mu.height(), jl.complement(n)) {
                prop_assert!(wt.contains(&mu.add(&xi)));
            }
        }
    }

    #[test]
    fn simple_module_is_free_off_j_lambda(label in finite_label(), ps in prop::collection::vec(pairing_value(), 3)) {
        let gcm = Gcm::from_type(label).unwrap();
        let n = gcm.rank();
        let e = Engine::new(&gcm).unwrap();
        let lambda = HighestWeight::new(ps[..n].to_vec());
        let free = j_lambda(&lambda).complement(n);
        for d in depths_up_to(n, 4, free) {
            prop_assert!(shapovalov_rank(&e, &lambda, &d).unwrap() >= 1, "{:?} missing", d);
        }
    }

    #[test]
    fn plans_are_sound(m in module(), seed in any::<u64>()) {
        let Some((gcm, e, q)) = m else { return Ok(()) };
        let n = gcm.rank();
        let lambda = q.lambda().clone();
        let jv = compute_jv(&gcm, &q).unwrap().jv;
        let free = jv.complement(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c: BTreeMap<usize, u32> = free.iter().map(|i| (i, rand::Rng::gen_range(&mut rng, 0..=2))).collect();
        let plans = enumerate_free(&gcm, &lambda, free, &c, EnumerationMode::Exhaustive).unwrap();
        let inside = free.intersection(j_lambda(&lambda));
        for p in &plans {
            let mut o = p.ordering.clone();
            o.sort();
            prop_assert_eq!(o, free.to_vec());
            prop_assert!(gcm.is_independent(p.terminal_independent));
            prop_assert!(p.dot_set.is_subset(p.terminal_independent));
            // removing the first k nodes leaves the loop's k-th remaining set
            let mut rem = inside;
            for (k, &i) in p.ordering[..p.prefix_len].iter().enumerate() {
                prop_assert!(!gcm.is_independent(rem), "stopped late at step {}", k);
                rem = rem.without(i);
            }
            prop_assert_eq!(rem, p.terminal_independent);
            // every produced ordering is nonvanishing
            prop_assert!(verify_nonvanishing(&q, p).unwrap());
            // the trailing factors outside J_lambda may be permuted
            let k = p.ordering.len() - free.difference(inside).len();
            let mut alt = p.clone();
            alt.ordering[k..].reverse();
            prop_assert!(verify_nonvanishing(&q, &alt).unwrap());
        }
        if lambda.0.iter().all(|x| x.as_nonneg_int().is_some()) {
            let b = multiplicity_lower_bound(&gcm, &lambda, jv, &c, Some(&e)).unwrap();
            prop_assert!(b.bound <= q.dim(&b.mu));
            for t in &b.contributors {
                prop_assert!(simple_weights(&gcm, &t.highest_weight, t.depth.height()).unwrap().contains(&t.depth));
            }
        }
    }
}

#[test]
fn cone_examples() {
    let a1a1 = Gcm::from_type("A1xA1").unwrap();
    let top = TruncatedWeightSet::top(HighestWeight::zero(2), 2);
    let c = cone_subtract(&top, &[dv(&[0, 1]), dv(&[1, 1])], 2).unwrap();
    assert_eq!(
        c.depths,
        [dv(&[0, 0]), dv(&[0, 1]), dv(&[0, 2]), dv(&[1, 1])].into()
    );
    assert_eq!(cone_subtract(&top, &[], 2).unwrap().len(), 1);
    let s = TruncatedWeightSet::from_depths(HighestWeight::zero(2), 2, [dv(&[0, 0]), dv(&[1, 0])]);
    let c = cone_subtract(&s, &[dv(&[0, 1])], 2).unwrap();
    assert_eq!(
        c.depths,
        [
            dv(&[0, 0]),
            dv(&[1, 0]),
            dv(&[0, 1]),
            dv(&[1, 1]),
            dv(&[0, 2])
        ]
        .into()
    );
    let pv = parabolic_verma_weights(
        &a1a1,
        &HighestWeight::from_ints(&[1, -1]),
        NodeSet::singleton(0),
        2,
    )
    .unwrap();
    assert_eq!(c.depths, pv.depths);
}
