//! Weight formulas: parabolic Verma and simple weight-sets, Minkowski decompositions,
//! the obstruction set `J_V`, slice decompositions and ascent chains.
//!
//! Every comparison is made on the truncation `height <= H`. Cone subtraction only adds
//! height, so a set truncated at `H` determines its Minkowski difference up to `H`
//! exactly and the verified height of every report is `H` itself.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::cartan::{Gcm, NodeSet};
use crate::engine::{construct_n_lambda_j, Engine, GradedVector, QuotientModule};
use crate::error::{Error, Result};
use crate::integrable::integrable_weights;
use crate::roots::positive_roots;
use crate::weights::{
    cone_subtract, depths_up_to, j_lambda, pairing, require_integrable, DepthVector, HighestWeight,
    TruncatedWeightSet,
};

/// Membership in `wt V` for some highest-weight module `V`, valid up to a height.
pub trait MembershipOracle {
    fn lambda(&self) -> &HighestWeight;
    fn valid_height(&self) -> u32;
    /// Whether `lambda - d` is a weight; only meaningful for `d.height() <= valid_height()`.
    fn contains(&self, d: &DepthVector) -> bool;

    fn rank(&self) -> usize {
        self.lambda().rank()
    }
}

impl MembershipOracle for TruncatedWeightSet {
    fn lambda(&self) -> &HighestWeight {
        &self.lambda
    }

    fn valid_height(&self) -> u32 {
        self.height
    }

    fn contains(&self, d: &DepthVector) -> bool {
        TruncatedWeightSet::contains(self, d)
    }
}

impl MembershipOracle for QuotientModule {
    fn lambda(&self) -> &HighestWeight {
        QuotientModule::lambda(self)
    }

    fn valid_height(&self) -> u32 {
        self.height()
    }

    fn contains(&self, d: &DepthVector) -> bool {
        d.height() <= self.height() && self.dim(d) > 0
    }
}

fn check_height(oracle: &dyn MembershipOracle, h: u32) -> Result<()> {
    if h > oracle.valid_height() {
        return Err(Error::InsufficientHeight {
            required: h,
            available: oracle.valid_height(),
        });
    }
    Ok(())
}

/// The oracle's weights up to `h`, found by walking down from the top.
///
/// Every weight of a highest-weight module other than the top lies just below another
/// weight, so the walk sees them all.
pub fn collect_weights(oracle: &dyn MembershipOracle, h: u32) -> Result<TruncatedWeightSet> {
    check_height(oracle, h)?;
    let n = oracle.rank();
    let mut out = TruncatedWeightSet::new(oracle.lambda().clone(), h);
    let zero = DepthVector::zero(n);
    if !oracle.contains(&zero) {
        return Ok(out);
    }
    out.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(d) = queue.pop_front() {
        if d.height() == h {
            continue;
        }
        for i in 0..n {
            let e = d.plus_unit(i, 1);
            if !out.contains(&e) && oracle.contains(&e) {
                out.insert(e.clone());
                queue.push_back(e);
            }
        }
    }
    Ok(out)
}

/// Depths of the positive roots outside `Delta_J` up to height `h`.
pub fn nonparabolic_generators(gcm: &Gcm, j: NodeSet, h: u32) -> Vec<DepthVector> {
    if h == 0 {
        return Vec::new();
    }
    positive_roots(gcm, h)
        .depths()
        .into_iter()
        .filter(|d| !d.support().is_subset(j))
        .collect()
}

/// Depths of the roots of unit height on `J^c` up to height `h`: the smallest generating
/// set of the cone over the roots outside `Delta_J`.
pub fn minimal_generators(gcm: &Gcm, j: NodeSet, h: u32) -> Vec<DepthVector> {
    if h == 0 {
        return Vec::new();
    }
    let jc = j.complement(gcm.rank());
    positive_roots(gcm, h)
        .depths()
        .into_iter()
        .filter(|d| d.height_on(jc) == 1)
        .collect()
}

fn first_difference(a: &TruncatedWeightSet, b: &TruncatedWeightSet) -> Option<DepthVector> {
    a.depths.symmetric_difference(&b.depths).next().cloned()
}

/// The weights of `M(lambda, J)` up to `h`, computed three ways that must agree:
/// the integrable top minus the cone over `Delta^+ \ Delta_J^+`, the same top minus the
/// cone over the unit-height roots, and the union of integrable slices
/// `xi + wt L_J^max(lambda - xi)` over `xi` supported on `J^c`.
pub fn parabolic_verma_weights(
    gcm: &Gcm,
    lambda: &HighestWeight,
    j: NodeSet,
    h: u32,
) -> Result<TruncatedWeightSet> {
    lambda.check_rank(gcm)?;
    j.check_range(gcm.rank())?;
    require_integrable(lambda, j)?;
    let top = integrable_weights(gcm, lambda, j, h)?;
    let by_roots = cone_subtract(&top, &nonparabolic_generators(gcm, j, h), h)?;
    let by_units = cone_subtract(&top, &minimal_generators(gcm, j, h), h)?;
    if let Some(d) = first_difference(&by_roots, &by_units) {
        return Err(Error::InternalMismatch(format!(
            "minimal generators disagree at {d:?}"
        )));
    }
    let by_slices = slice_union(gcm, lambda, j, h)?;
    if let Some(d) = first_difference(&by_roots, &by_slices) {
        return Err(Error::InternalMismatch(format!(
            "slice decomposition disagrees at {d:?}"
        )));
    }
    Ok(by_roots)
}

fn slice_union(
    gcm: &Gcm,
    lambda: &HighestWeight,
    j: NodeSet,
    h: u32,
) -> Result<TruncatedWeightSet> {
    let n = gcm.rank();
    let mut out = TruncatedWeightSet::new(lambda.clone(), h);
    for xi in depths_up_to(n, h, j.complement(n)) {
        let shifted = lambda.shifted(gcm, &xi);
        for d in integrable_weights(gcm, &shifted, j, h - xi.height())?.iter() {
            out.insert(d.add(&xi));
        }
    }
    Ok(out)
}

/// `wt L(lambda) = wt M(lambda, J_lambda)`.
pub fn simple_weights(gcm: &Gcm, lambda: &HighestWeight, h: u32) -> Result<TruncatedWeightSet> {
    parabolic_verma_weights(gcm, lambda, j_lambda(lambda), h)
}

/// Extends the `J_lambda`-slice of a weight-set to the whole set by subtracting the cone
/// over the unit-height roots outside `J_lambda`.
pub fn extend_thm_a(gcm: &Gcm, slice: &TruncatedWeightSet, h: u32) -> Result<TruncatedWeightSet> {
    slice.lambda.check_rank(gcm)?;
    let jl = j_lambda(&slice.lambda);
    if let Some(d) = slice.iter().find(|d| !d.support().is_subset(jl)) {
        return Err(Error::SliceOutsideJLambda(d.clone()));
    }
    cone_subtract(slice, &minimal_generators(gcm, jl, h), h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinkowskiReport {
    pub j: NodeSet,
    pub holds: bool,
    /// First depth on which `wt V` and `wt_J V - Z_{>=0}(Delta^+ \ Delta_J^+)` differ.
    pub counterexample: Option<DepthVector>,
    pub verified_height: u32,
}

/// Whether `wt V = wt_J V - Z_{>=0}(Delta^+ \ Delta_J^+)` up to height `h`.
pub fn minkowski_check(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    j: NodeSet,
    h: u32,
) -> Result<MinkowskiReport> {
    j.check_range(gcm.rank())?;
    let wt = collect_weights(oracle, h)?;
    let rhs = cone_subtract(
        &wt.restrict_support(j),
        &nonparabolic_generators(gcm, j, h),
        h,
    )?;
    let counterexample = first_difference(&wt, &rhs);
    Ok(MinkowskiReport {
        j,
        holds: counterexample.is_none(),
        counterexample,
        verified_height: h,
    })
}

pub fn minkowski_holds(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    j: NodeSet,
    h: u32,
) -> Result<bool> {
    Ok(minkowski_check(gcm, oracle, j, h)?.holds)
}

/// `wt_J V - Z_{>=0} Pi_{J^c}` is contained in `wt V` up to height `h`.
pub fn free_complement_holds(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    j: NodeSet,
    h: u32,
) -> Result<bool> {
    j.check_range(gcm.rank())?;
    let wt = collect_weights(oracle, h)?;
    let n = gcm.rank();
    let units: Vec<DepthVector> = j
        .complement(n)
        .iter()
        .map(|i| DepthVector::unit(n, i))
        .collect();
    let rhs = cone_subtract(&wt.restrict_support(j), &units, h)?;
    let holds = rhs.iter().all(|d| wt.contains(d));
    Ok(holds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JvReport {
    pub jv: NodeSet,
    pub witnesses: Vec<NodeSet>,
    pub heights_checked: u32,
}

/// Depth of `(prod_{i in I} s_i) . lambda` below `lambda`.
fn dot_depth(lambda: &HighestWeight, i: NodeSet) -> DepthVector {
    let mut d = DepthVector::zero(lambda.rank());
    for k in i.iter() {
        d.0[k] = lambda.dominant_at(k).expect("node in J_lambda") + 1;
    }
    d
}

/// `J_V`: the union of the minimal independent `I` in `J_lambda` whose dot-shifted
/// weight is missing. Subsets are visited by size; supersets of witnesses are skipped.
///
/// Fails with `InsufficientHeight` when a set that must be inspected lies above the
/// oracle's valid height.
pub fn compute_jv(gcm: &Gcm, oracle: &dyn MembershipOracle) -> Result<JvReport> {
    let lambda = oracle.lambda();
    lambda.check_rank(gcm)?;
    let jl = j_lambda(lambda);
    let mut witnesses: Vec<NodeSet> = Vec::new();
    for i in gcm.independent_subsets(jl) {
        if i.is_empty() || witnesses.iter().any(|w| w.is_subset(i)) {
            continue;
        }
        let d = dot_depth(lambda, i);
        check_height(oracle, d.height())?;
        if oracle.contains(&d) {
            continue;
        }
        // every proper subset is present: a missing one would contain a witness
        witnesses.push(i);
    }
    let jv = witnesses.iter().fold(NodeSet::EMPTY, |a, &w| a.union(w));
    Ok(JvReport {
        jv,
        witnesses,
        heights_checked: oracle.valid_height(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullWeightsReport {
    pub holds: bool,
    pub missing: Option<DepthVector>,
    pub verified_height: u32,
}

/// Whether every depth with independent support is a weight, up to height `h`.
pub fn full_weights_check(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    h: u32,
) -> Result<FullWeightsReport> {
    check_height(oracle, h)?;
    let n = gcm.rank();
    let mut missing = None;
    'outer: for s in gcm.independent_subsets(NodeSet::full(n)) {
        for d in depths_up_to(n, h, s) {
            if !oracle.contains(&d) {
                missing = Some(d);
                break 'outer;
            }
        }
    }
    Ok(FullWeightsReport {
        holds: missing.is_none(),
        missing,
        verified_height: h,
    })
}

pub fn full_weights_holds(gcm: &Gcm, oracle: &dyn MembershipOracle, h: u32) -> Result<bool> {
    Ok(full_weights_check(gcm, oracle, h)?.holds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalReport {
    pub j: NodeSet,
    /// `wt V = wt M(lambda, J)`.
    pub holds: bool,
    pub counterexample: Option<DepthVector>,
    /// `M(lambda, J)` maps onto `V`.
    pub below_max: bool,
    /// `V` maps onto `M(lambda) / N(lambda, J)`.
    pub above_min: bool,
    pub verified_height: u32,
}

/// Compares `wt V` with `wt M(lambda, J)` and, independently, tests whether `V` lies in
/// the interval `M(lambda, J) ->> V ->> M(lambda)/N(lambda, J)`. The two answers must agree.
pub fn interval_check(engine: &Engine, v: &QuotientModule, j: NodeSet) -> Result<IntervalReport> {
    let gcm = engine.gcm();
    let lambda = v.lambda();
    let h = v.height();
    require_integrable(lambda, j)?;
    let wt = v.weights();
    let target = parabolic_verma_weights(gcm, lambda, j, h)?;
    let counterexample = first_difference(&wt, &target);
    let holds = counterexample.is_none();

    let mut below_max = true;
    for i in j.iter() {
        let k = lambda.dominant_at(i).unwrap() + 1;
        if k > h {
            return Err(Error::InsufficientHeight {
                required: k,
                available: h,
            });
        }
        if v.monomial_apply(&[(i, k)])?.is_some() {
            below_max = false;
        }
    }
    let n_lambda_j = construct_n_lambda_j(engine, lambda, j, h)?;
    let above_min = v.kernel().spaces.iter().all(|(d, space)| {
        space.basis().iter().all(|row| {
            n_lambda_j.contains(&GradedVector {
                depth: d.clone(),
                coords: row.clone(),
            })
        })
    });
    if holds != (below_max && above_min) {
        return Err(Error::InternalMismatch(format!(
            "weight comparison gives {holds} but the module interval test gives {}",
            below_max && above_min
        )));
    }
    Ok(IntervalReport {
        j,
        holds,
        counterexample,
        below_max,
        above_min,
        verified_height: h,
    })
}

/// Partitions the weights up to `h` by their `J^c`-part `xi`.
///
/// Requires `J` to contain `J_V`.
pub fn slice_decompose(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    j: NodeSet,
    h: u32,
) -> Result<BTreeMap<DepthVector, TruncatedWeightSet>> {
    j.check_range(gcm.rank())?;
    let jv = compute_jv(gcm, oracle)?.jv;
    if !jv.is_subset(j) {
        return Err(Error::JDoesNotContainJV { j, jv });
    }
    let wt = collect_weights(oracle, h)?;
    let jc = j.complement(gcm.rank());
    let mut out: BTreeMap<DepthVector, TruncatedWeightSet> = BTreeMap::new();
    for d in wt.iter() {
        out.entry(d.restrict(jc))
            .or_insert_with(|| TruncatedWeightSet::new(wt.lambda.clone(), h))
            .insert(d.clone());
    }
    Ok(out)
}

/// Where an ascent chain stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChainTarget {
    /// `supp(lambda - mu_n) ∩ J` is independent.
    #[default]
    IndependentSupport,
    /// `mu_n` is the top of its `J`-slice.
    SliceTop,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub depth: DepthVector,
    /// Node along which the chain rises from this weight to the next one.
    pub node: Option<usize>,
}

fn chain_done(gcm: &Gcm, d: &DepthVector, j: NodeSet, target: ChainTarget) -> bool {
    let s = d.support().intersection(j);
    match target {
        ChainTarget::IndependentSupport => gcm.is_independent(s),
        ChainTarget::SliceTop => s.is_empty(),
    }
}

/// Admissible steps up from `d`: `(i, d - k alpha_i)` with `d - k alpha_i` a weight,
/// `<mu', alpha_i^vee> >= k > 0`, so `mu` lies between `s_i mu'` and `mu'`.
/// Nodes ascending, and for each node the largest `k` first.
fn ascents(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    d: &DepthVector,
    j: NodeSet,
) -> Vec<(usize, DepthVector)> {
    let lambda = oracle.lambda();
    let mut out = Vec::new();
    for i in d.support().intersection(j).iter() {
        let mut ks = Vec::new();
        for k in 1..=d.get(i) {
            let up = d.minus_unit(i, k).unwrap();
            if !oracle.contains(&up) {
                break;
            }
            let p = pairing(gcm, lambda, &up, i);
            if p.is_integer() && p.as_int().unwrap() >= k as i128 {
                ks.push(up);
            }
        }
        out.extend(ks.into_iter().rev().map(|up| (i, up)));
    }
    out
}

/// A chain `mu = mu_0 < mu_1 < ... < mu_n` of weights inside the `J`-slice of `mu`, each
/// step rising along a simple root of `J` with `mu_{t-1}` on the string between
/// `s_i mu_t` and `mu_t`. Deterministic: lowest node, then the longest step, first.
pub fn ascend_chain(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    mu: &DepthVector,
    j: NodeSet,
    target: ChainTarget,
) -> Result<Vec<ChainLink>> {
    ascend_chains(gcm, oracle, mu, j, target, 1)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::ChainNotFound(mu.clone()))
}

/// Up to `limit` chains as in [`ascend_chain`], in the same search order.
pub fn ascend_chains(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    mu: &DepthVector,
    j: NodeSet,
    target: ChainTarget,
    limit: usize,
) -> Result<Vec<Vec<ChainLink>>> {
    j.check_range(gcm.rank())?;
    check_height(oracle, mu.height())?;
    if !oracle.contains(mu) {
        return Err(Error::NotAWeight(mu.clone()));
    }
    let mut found = Vec::new();
    let mut path = vec![ChainLink {
        depth: mu.clone(),
        node: None,
    }];
    let mut dead = BTreeSet::new();
    search(
        gcm, oracle, j, target, limit, &mut path, &mut found, &mut dead,
    );
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    j: NodeSet,
    target: ChainTarget,
    limit: usize,
    path: &mut Vec<ChainLink>,
    found: &mut Vec<Vec<ChainLink>>,
    dead: &mut BTreeSet<DepthVector>,
) -> bool {
    let d = path.last().unwrap().depth.clone();
    if chain_done(gcm, &d, j, target) {
        found.push(path.clone());
        return true;
    }
    if dead.contains(&d) {
        return false;
    }
    let mut any = false;
    for (i, up) in ascents(gcm, oracle, &d, j) {
        if found.len() >= limit {
            return true;
        }
        path.last_mut().unwrap().node = Some(i);
        path.push(ChainLink {
            depth: up,
            node: None,
        });
        any |= search(gcm, oracle, j, target, limit, path, found, dead);
        path.pop();
        path.last_mut().unwrap().node = None;
    }
    if !any {
        dead.insert(d);
    }
    any
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeRootReport {
    /// Roots `beta` with `wt V - beta ⊆ wt V`; a root set `S` satisfies
    /// `wt V - Z_{>=0} S ⊆ wt V` exactly when it is contained in this list.
    pub roots: Vec<DepthVector>,
    pub verified_height: u32,
}

/// Experimental search for the positive roots along which `wt V` is free, up to `h`.
pub fn free_root_subsets(
    gcm: &Gcm,
    oracle: &dyn MembershipOracle,
    h: u32,
) -> Result<FreeRootReport> {
    let wt = collect_weights(oracle, h)?;
    let roots = if h == 0 {
        Vec::new()
    } else {
        positive_roots(gcm, h).depths()
    };
    let roots = roots
        .into_iter()
        .filter(|b| {
            wt.iter()
                .all(|d| d.height() + b.height() > h || wt.contains(&d.add(b)))
        })
        .collect();
    Ok(FreeRootReport {
        roots,
        verified_height: h,
    })
}
