//! Orderings of the free directions `J_V^c` along which lowering monomials survive, and
//! the resulting lower bounds on weight multiplicities.
//!
//! Given exponents `c(i)`, the nodes of `J_V^c ∩ J_lambda` are peeled off one adjacent
//! pair at a time, removing the endpoint with the smaller exponent, until the rest is
//! independent. The nodes outside `J_lambda` go last, i.e. act first on `v_lambda`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::cartan::{Gcm, NodeSet};
use crate::engine::{shapovalov_rank, Engine, QuotientModule};
use crate::error::{Error, Result};
use crate::formulas::simple_weights;
use crate::weights::{dot_reflect, j_lambda, DepthVector, HighestWeight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnumerationMode {
    /// Lowest-index adjacent pair at each step, smaller exponent (then lower index) removed.
    #[default]
    Deterministic,
    /// Every pair and every tied choice.
    Exhaustive,
}

/// An ordering `j_1, ..., j_n` of the free nodes; the monomial is
/// `f_{j_1}^{c(j_1)} ... f_{j_n}^{c(j_n)} v_lambda`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EnumerationPlan {
    pub ordering: Vec<usize>,
    /// Number of leading nodes removed by the pair loop.
    pub prefix_len: usize,
    /// The independent set left when the loop stops.
    pub terminal_independent: NodeSet,
    /// Nodes of the terminal set whose exponent exceeds the threshold.
    pub dot_set: NodeSet,
    pub c: BTreeMap<usize, u32>,
}

impl EnumerationPlan {
    /// The monomial as an operator word, zero exponents dropped.
    pub fn word(&self) -> Vec<(usize, u32)> {
        self.ordering
            .iter()
            .map(|&i| (i, self.c[&i]))
            .filter(|&(_, k)| k > 0)
            .collect()
    }

    /// `sum c(i) alpha_i`.
    pub fn depth(&self, n: usize) -> DepthVector {
        let mut d = DepthVector::zero(n);
        for (&i, &k) in &self.c {
            d.0[i] = k;
        }
        d
    }
}

fn check_exponents(gcm: &Gcm, free: NodeSet, c: &BTreeMap<usize, u32>) -> Result<()> {
    free.check_range(gcm.rank())?;
    let keys: NodeSet = c.keys().copied().collect();
    if keys != free {
        return Err(Error::Parse(format!(
            "exponents given on {keys:?} but the free nodes are {free:?}"
        )));
    }
    Ok(())
}

type Peelings = Vec<(Vec<usize>, NodeSet)>;

/// All `(removed sequence, terminal set)` outcomes of the pair loop on `rem`.
fn peel(
    gcm: &Gcm,
    rem: NodeSet,
    c: &BTreeMap<usize, u32>,
    mode: EnumerationMode,
    memo: &mut HashMap<NodeSet, Peelings>,
) -> Peelings {
    if gcm.is_independent(rem) {
        return vec![(Vec::new(), rem)];
    }
    if let Some(r) = memo.get(&rem) {
        return r.clone();
    }
    let mut choices: BTreeSet<usize> = BTreeSet::new();
    'pairs: for a in rem.iter() {
        for b in rem.iter().filter(|&b| b > a && gcm.adjacent(a, b)) {
            let m = c[&a].min(c[&b]);
            match mode {
                EnumerationMode::Deterministic => {
                    choices.insert(if c[&a] == m { a } else { b });
                    break 'pairs;
                }
                EnumerationMode::Exhaustive => {
                    choices.extend([a, b].into_iter().filter(|x| c[x] == m));
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in choices {
        for (mut seq, term) in peel(gcm, rem.without(i), c, mode, memo) {
            seq.insert(0, i);
            out.insert((seq, term));
        }
    }
    let out: Peelings = out.into_iter().collect();
    memo.insert(rem, out.clone());
    out
}

/// Orderings of `free_nodes` for exponents `c`.
///
/// The nodes of `free_nodes ∩ J_lambda` are peeled pairwise; the terminal independent set
/// `H'` is split into `H' \ H` followed by `H`, where `H` holds the nodes with
/// `c(i) > lambda_i - <sum_{j outside J_lambda} c(j) alpha_j, alpha_i^vee>`; the free nodes
/// outside `J_lambda` come last in increasing order.
pub fn enumerate_free(
    gcm: &Gcm,
    lambda: &HighestWeight,
    free_nodes: NodeSet,
    c: &BTreeMap<usize, u32>,
    mode: EnumerationMode,
) -> Result<Vec<EnumerationPlan>> {
    lambda.check_rank(gcm)?;
    check_exponents(gcm, free_nodes, c)?;
    let jl = j_lambda(lambda);
    let inside = free_nodes.intersection(jl);
    let outside = free_nodes.difference(jl);
    let mut plans = BTreeSet::new();
    for (prefix, terminal) in peel(gcm, inside, c, mode, &mut HashMap::new()) {
        let dot_set: NodeSet = terminal
            .iter()
            .filter(|&i| {
                let shift: i64 = outside.iter().map(|j| c[&j] as i64 * gcm.entry(i, j)).sum();
                (c[&i] as i64) > lambda.dominant_at(i).unwrap() as i64 - shift
            })
            .collect();
        let mut ordering = prefix.clone();
        ordering.extend(terminal.difference(dot_set).iter());
        ordering.extend(dot_set.iter());
        ordering.extend(outside.iter());
        plans.insert(EnumerationPlan {
            ordering,
            prefix_len: prefix.len(),
            terminal_independent: terminal,
            dot_set,
            c: c.clone(),
        });
    }
    Ok(plans.into_iter().collect())
}

/// Whether the plan's monomial is nonzero on the highest-weight vector of `V`.
pub fn verify_nonvanishing(v: &QuotientModule, plan: &EnumerationPlan) -> Result<bool> {
    Ok(v.monomial_apply(&plan.word())?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contributor {
    pub dot_set: NodeSet,
    /// `w_H . lambda` with `w_H` the product of the reflections in `H`.
    pub highest_weight: HighestWeight,
    /// Depth of `mu` below `w_H . lambda`.
    pub depth: DepthVector,
    /// `dim L(w_H . lambda)_mu`, or 1 for a membership-only bound.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityBound {
    pub mu: DepthVector,
    pub bound: usize,
    pub contributors: Vec<Contributor>,
    /// Set when no engine was available and each contributor counts 1.
    pub membership_only: bool,
}

/// `dim V_mu >= sum_H dim L(w_H . lambda)_mu` for `mu = lambda - sum c(i) alpha_i`, the
/// sum over the distinct dot sets `H` of all exhaustive plans on `J_V^c`.
///
/// Each contribution is checked to be positive against the weights of the simple module.
pub fn multiplicity_lower_bound(
    gcm: &Gcm,
    lambda: &HighestWeight,
    jv: NodeSet,
    c: &BTreeMap<usize, u32>,
    engine: Option<&Engine>,
) -> Result<MultiplicityBound> {
    let n = gcm.rank();
    let free = jv.complement(n);
    let plans = enumerate_free(gcm, lambda, free, c, EnumerationMode::Exhaustive)?;
    let mu = plans
        .first()
        .map_or_else(|| DepthVector::zero(n), |p| p.depth(n));
    let dot_sets: BTreeSet<NodeSet> = plans.iter().map(|p| p.dot_set).collect();
    let mut contributors = Vec::new();
    for h in dot_sets {
        let (highest_weight, shift) = dot_reflect(gcm, lambda, h)?;
        let depth = mu.checked_sub(&shift).ok_or_else(|| {
            Error::InternalMismatch(format!("dot set {h:?} lies above mu = {mu:?}"))
        })?;
        if !simple_weights(gcm, &highest_weight, depth.height())?.contains(&depth) {
            return Err(Error::InternalMismatch(format!(
                "mu is not a weight of L(w_H . lambda) for H = {h:?}"
            )));
        }
        let multiplicity = match engine {
            Some(e) => shapovalov_rank(e, &highest_weight, &depth)?,
            None => 1,
        };
        if multiplicity == 0 {
            return Err(Error::InternalMismatch(format!(
                "zero multiplicity of mu in L(w_H . lambda) for H = {h:?}"
            )));
        }
        contributors.push(Contributor {
            dot_set: h,
            highest_weight,
            depth,
            multiplicity,
        });
    }
    let bound = contributors.iter().map(|c| c.multiplicity).sum();
    Ok(MultiplicityBound {
        mu,
        bound,
        contributors,
        membership_only: engine.is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ModulePresentation;

    fn ns(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    fn cs(v: &[(usize, u32)]) -> BTreeMap<usize, u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn deterministic_traces() {
        let a3 = Gcm::from_type("A3").unwrap();
        let lam = HighestWeight::from_ints(&[0, 0, 0]);
        let p = enumerate_free(
            &a3,
            &lam,
            ns(&[0, 1, 2]),
            &cs(&[(0, 2), (1, 5), (2, 1)]),
            EnumerationMode::Deterministic,
        )
        .unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].ordering, vec![0, 2, 1]);
        assert_eq!(p[0].terminal_independent, ns(&[1]));
        assert_eq!(p[0].prefix_len, 2);

        let a2 = Gcm::from_type("A2").unwrap();
        let p = enumerate_free(
            &a2,
            &HighestWeight::from_ints(&[0, 0]),
            ns(&[0, 1]),
            &cs(&[(0, 2), (1, 1)]),
            EnumerationMode::Deterministic,
        )
        .unwrap();
        assert_eq!(p[0].ordering, vec![1, 0]);
        assert_eq!(p[0].terminal_independent, ns(&[0]));

        let a11 = Gcm::from_type("A1xA1").unwrap();
        let p = enumerate_free(
            &a11,
            &HighestWeight::from_ints(&[0, 0]),
            ns(&[0, 1]),
            &cs(&[(0, 4), (1, 1)]),
            EnumerationMode::Exhaustive,
        )
        .unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].terminal_independent, ns(&[0, 1]));
        assert_eq!(p[0].prefix_len, 0);
    }

    #[test]
    fn exhaustive_covers_ties_and_pairs() {
        let a3 = Gcm::from_type("A3").unwrap();
        let lam = HighestWeight::from_ints(&[1, 1, 1]);
        let c = cs(&[(0, 1), (1, 1), (2, 1)]);
        let all =
            enumerate_free(&a3, &lam, ns(&[0, 1, 2]), &c, EnumerationMode::Exhaustive).unwrap();
        let det = enumerate_free(
            &a3,
            &lam,
            ns(&[0, 1, 2]),
            &c,
            EnumerationMode::Deterministic,
        )
        .unwrap();
        assert!(all.contains(&det[0]));
        let terminals: BTreeSet<NodeSet> = all.iter().map(|p| p.terminal_independent).collect();
        // removing 1 first leaves {0, 2}; otherwise a single node remains
        assert_eq!(
            terminals,
            [ns(&[0, 2]), ns(&[0]), ns(&[1]), ns(&[2])].into()
        );
        for p in &all {
            let mut o = p.ordering.clone();
            o.sort();
            assert_eq!(o, vec![0, 1, 2]);
            assert!(a3.is_independent(p.terminal_independent));
        }
    }

    #[test]
    fn outside_nodes_go_last_and_shift_threshold() {
        let a2 = Gcm::from_type("A2").unwrap();
        // J_lambda = {0}; node 1 is free but not integrable
        let lam = HighestWeight::new(vec![1.into(), "-1/2".parse().unwrap()]);
        let p = enumerate_free(
            &a2,
            &lam,
            ns(&[0, 1]),
            &cs(&[(0, 2), (1, 1)]),
            EnumerationMode::Deterministic,
        )
        .unwrap();
        assert_eq!(p[0].ordering, vec![0, 1]);
        // threshold 1 - c(1) a[0][1] = 2, so c(0) = 2 does not exceed it
        assert_eq!(p[0].dot_set, NodeSet::EMPTY);
        let p = enumerate_free(
            &a2,
            &lam,
            ns(&[0, 1]),
            &cs(&[(0, 3), (1, 1)]),
            EnumerationMode::Deterministic,
        )
        .unwrap();
        assert_eq!(p[0].dot_set, ns(&[0]));
    }

    #[test]
    fn bounds_in_sl2() {
        let a1 = Gcm::from_type("A1").unwrap();
        let e = Engine::new(&a1).unwrap();
        let lam = HighestWeight::from_ints(&[3]);
        let b =
            multiplicity_lower_bound(&a1, &lam, NodeSet::EMPTY, &cs(&[(0, 5)]), Some(&e)).unwrap();
        assert_eq!(b.bound, 1);
        assert_eq!(b.contributors[0].dot_set, ns(&[0]));
        assert_eq!(
            b.contributors[0].highest_weight,
            HighestWeight::from_ints(&[-5])
        );
        let b =
            multiplicity_lower_bound(&a1, &lam, NodeSet::EMPTY, &cs(&[(0, 2)]), Some(&e)).unwrap();
        assert_eq!(b.bound, 1);
        assert_eq!(b.contributors[0].dot_set, NodeSet::EMPTY);
        let b = multiplicity_lower_bound(&a1, &lam, NodeSet::EMPTY, &cs(&[(0, 2)]), None).unwrap();
        assert!(b.membership_only);
    }

    #[test]
    fn bound_in_a1xa1() {
        let g = Gcm::from_type("A1xA1").unwrap();
        let e = Engine::new(&g).unwrap();
        let lam = HighestWeight::from_ints(&[0, 0]);
        let b =
            multiplicity_lower_bound(&g, &lam, NodeSet::EMPTY, &cs(&[(0, 1), (1, 1)]), Some(&e))
                .unwrap();
        assert_eq!(b.bound, 1);
        assert_eq!(b.contributors[0].dot_set, ns(&[0, 1]));
        let v = QuotientModule::new(&e, &ModulePresentation::verma(lam), 4).unwrap();
        assert!(v.dim(&b.mu) >= b.bound);
    }

    #[test]
    fn nonvanishing_in_a2_example() {
        let a2 = Gcm::from_type("A2").unwrap();
        let e = Engine::new(&a2).unwrap();
        let lam = HighestWeight::from_ints(&[0, 0]);
        let p = ModulePresentation::new(
            lam.clone(),
            vec![ModulePresentation::word(&[(0, 2), (1, 1)])],
        );
        let v = QuotientModule::new(&e, &p, 6).unwrap();
        let c = cs(&[(0, 2), (1, 1)]);
        let plan =
            &enumerate_free(&a2, &lam, ns(&[0, 1]), &c, EnumerationMode::Deterministic).unwrap()[0];
        assert!(verify_nonvanishing(&v, plan).unwrap());
        let mut anti = plan.clone();
        anti.ordering = vec![0, 1];
        assert!(!verify_nonvanishing(&v, &anti).unwrap());
    }

    #[test]
    fn exponents_must_match_free_nodes() {
        let a2 = Gcm::from_type("A2").unwrap();
        let lam = HighestWeight::from_ints(&[0, 0]);
        assert!(enumerate_free(
            &a2,
            &lam,
            ns(&[0, 1]),
            &cs(&[(0, 1)]),
            EnumerationMode::Deterministic
        )
        .is_err());
    }
}
