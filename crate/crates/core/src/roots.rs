//! Height-bounded positive roots, classified by Weyl descent.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cartan::{Gcm, NodeSet};
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::weights::{DepthVector, HighestWeight};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum RootKind {
    Real,
    Imaginary,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Root {
    pub depth: DepthVector,
    pub kind: RootKind,
}

/// `<beta, alpha_i^vee>` for a vector of simple-root coefficients.
fn root_pairing(gcm: &Gcm, beta: &[i64], i: usize) -> i64 {
    (0..gcm.rank()).map(|j| gcm.entry(i, j) * beta[j]).sum()
}

/// Result of descending `beta` through simple reflections.
enum Descent {
    NotRoot,
    /// `beta = s_{w[0]} ... s_{w[k-1]} alpha_j`.
    Real {
        word: Vec<usize>,
        simple: usize,
    },
    Imaginary,
}

fn descend(gcm: &Gcm, beta: &DepthVector) -> Descent {
    if beta.rank() != gcm.rank() || beta.is_zero() {
        return Descent::NotRoot;
    }
    let mut b: Vec<i64> = beta.0.iter().map(|&x| x as i64).collect();
    let mut word = Vec::new();
    loop {
        let nonzero: Vec<usize> = (0..b.len()).filter(|&i| b[i] != 0).collect();
        if nonzero.len() == 1 && b[nonzero[0]] == 1 {
            return Descent::Real {
                word,
                simple: nonzero[0],
            };
        }
        if !gcm.is_connected(nonzero.iter().copied().collect()) {
            return Descent::NotRoot;
        }
        match (0..b.len()).find(|&i| root_pairing(gcm, &b, i) > 0) {
            None => return Descent::Imaginary,
            Some(i) => {
                b[i] -= root_pairing(gcm, &b, i);
                if b[i] < 0 {
                    return Descent::NotRoot;
                }
                word.push(i);
            }
        }
    }
}

/// Real / imaginary classification of a positive depth vector, or `None` if it is not a root.
pub fn classify(gcm: &Gcm, beta: &DepthVector) -> Option<RootKind> {
    match descend(gcm, beta) {
        Descent::NotRoot => None,
        Descent::Real { .. } => Some(RootKind::Real),
        Descent::Imaginary => Some(RootKind::Imaginary),
    }
}

/// `<lambda - mu, alpha^vee>` for a real root `alpha`, where `mu` is the depth `beta`.
pub fn coroot_pairing(
    gcm: &Gcm,
    lambda: &HighestWeight,
    beta: &DepthVector,
    alpha: &DepthVector,
) -> Result<Rat> {
    let Descent::Real { word, simple } = descend(gcm, alpha) else {
        return Err(Error::NotARoot(alpha.clone()));
    };
    // alpha^vee = s_{w0} ... s_{wk} alpha_simple^vee, so reflect the weight by w0 first
    let mut q: Vec<Rat> = beta.0.iter().map(|&x| Rat::from(x)).collect();
    let pair = |q: &[Rat], i: usize| -> Rat {
        lambda.get(i)
            - (0..gcm.rank())
                .map(|j| Rat::from(gcm.entry(i, j)) * q[j])
                .sum::<Rat>()
    };
    for &i in &word {
        let p = pair(&q, i);
        q[i] += p;
    }
    Ok(pair(&q, simple))
}

/// Positive roots of height at most `height_bound`, in canonical depth order.
#[derive(Clone, Debug)]
pub struct RootSet {
    gcm: Gcm,
    height_bound: u32,
    roots: Vec<Root>,
    index: HashMap<DepthVector, usize>,
}

impl RootSet {
    fn from_roots(gcm: Gcm, height_bound: u32, mut roots: Vec<Root>) -> RootSet {
        roots.sort_by(|a, b| a.depth.cmp(&b.depth));
        let index = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.depth.clone(), k))
            .collect();
        RootSet {
            gcm,
            height_bound,
            roots,
            index,
        }
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn height_bound(&self) -> u32 {
        self.height_bound
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, d: &DepthVector) -> bool {
        self.index.contains_key(d)
    }

    pub fn position(&self, d: &DepthVector) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn get(&self, d: &DepthVector) -> Option<&Root> {
        self.position(d).map(|k| &self.roots[k])
    }

    pub fn depths(&self) -> Vec<DepthVector> {
        self.roots.iter().map(|r| r.depth.clone()).collect()
    }

    pub fn max_height(&self) -> u32 {
        self.roots
            .iter()
            .map(|r| r.depth.height())
            .max()
            .unwrap_or(0)
    }
}

/// Breadth-first generation by height; each candidate `beta + alpha_i` is classified by descent.
pub fn positive_roots(gcm: &Gcm, h: u32) -> RootSet {
    assert!(h >= 1, "height bound must be positive");
    let n = gcm.rank();
    let mut roots: Vec<Root> = (0..n)
        .map(|i| Root {
            depth: DepthVector::unit(n, i),
            kind: RootKind::Real,
        })
        .collect();
    let mut layer: Vec<DepthVector> = roots.iter().map(|r| r.depth.clone()).collect();
    for _ in 2..=h {
        let mut candidates: Vec<DepthVector> = layer
            .iter()
            .flat_map(|b| (0..n).map(move |i| b.plus_unit(i, 1)))
            .collect();
        candidates.sort();
        candidates.dedup();
        layer.clear();
        for c in candidates {
            if let Some(kind) = classify(gcm, &c) {
                layer.push(c.clone());
                roots.push(Root { depth: c, kind });
            }
        }
        if layer.is_empty() {
            break;
        }
    }
    RootSet::from_roots(gcm.clone(), h, roots)
}

/// Upper bound on the height of any root searched for the finite-type test.
const FINITE_SEARCH_HEIGHT: u32 = 64;

/// The whole positive root system if the algebra is of finite type.
pub fn finite_root_system(gcm: &Gcm) -> Result<RootSet> {
    let rs = positive_roots(gcm, FINITE_SEARCH_HEIGHT);
    let finite =
        rs.roots.iter().all(|r| r.kind == RootKind::Real) && rs.max_height() < FINITE_SEARCH_HEIGHT;
    if finite {
        Ok(rs)
    } else {
        Err(Error::NotFiniteType)
    }
}

pub fn is_finite_type(gcm: &Gcm) -> bool {
    finite_root_system(gcm).is_ok()
}

/// Roots supported in `j`.
pub fn parabolic_roots(rs: &RootSet, j: NodeSet) -> RootSet {
    let roots = rs
        .roots
        .iter()
        .filter(|r| r.depth.support().is_subset(j))
        .cloned()
        .collect();
    RootSet::from_roots(rs.gcm.clone(), rs.height_bound, roots)
}

/// Roots outside `j`, i.e. the positive roots not in the parabolic subsystem.
pub fn nonparabolic_roots(rs: &RootSet, j: NodeSet) -> Vec<Root> {
    rs.roots
        .iter()
        .filter(|r| !r.depth.support().is_subset(j))
        .cloned()
        .collect()
}

/// Roots whose coefficients over `i` sum to one.
pub fn unit_height_roots(rs: &RootSet, i: NodeSet) -> Vec<Root> {
    rs.roots
        .iter()
        .filter(|r| r.depth.height_on(i) == 1)
        .cloned()
        .collect()
}

/// A unit `I`-height root `gamma` with `beta - gamma` a root; first in canonical order.
pub fn psp_witness(rs: &RootSet, i: NodeSet, beta: &DepthVector) -> Result<Root> {
    if !rs.contains(beta) {
        return Err(Error::NotARoot(beta.clone()));
    }
    if beta.height_on(i) <= 1 {
        return Err(Error::UnitHeight(beta.clone()));
    }
    unit_height_roots(rs, i)
        .into_iter()
        .find(|g| {
            beta.checked_sub(&g.depth)
                .is_some_and(|rest| rs.contains(&rest))
        })
        .ok_or_else(|| Error::NoWitness(beta.clone()))
}

/// Chain of unit `I`-height roots below `beta`, stepping down by simple roots outside `I`
/// (lowest admissible node first) until no coefficient outside `I` remains.
pub fn descend_chain(rs: &RootSet, i: NodeSet, beta: &DepthVector) -> Result<Vec<Root>> {
    let root = rs.get(beta).ok_or_else(|| Error::NotARoot(beta.clone()))?;
    if beta.height_on(i) != 1 {
        return Err(Error::NotARoot(beta.clone()));
    }
    let outside = i.complement(rs.gcm.rank());
    let mut chain = vec![root.clone()];
    let mut cur = beta.clone();
    while cur.height_on(outside) > 0 {
        let next = cur
            .support()
            .intersection(outside)
            .iter()
            .filter_map(|j| cur.minus_unit(j, 1))
            .find(|d| rs.contains(d))
            .ok_or_else(|| Error::NoStep(cur.clone()))?;
        chain.push(rs.get(&next).unwrap().clone());
        cur = next;
    }
    Ok(chain)
}
