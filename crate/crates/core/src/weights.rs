//! Highest weights, depth vectors, truncated weight-sets and cone subtraction.
//!
//! A weight `lambda - sum beta_i alpha_i` is stored as its depth vector `beta`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{Gcm, NodeSet};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Nonnegative coefficients over the simple roots.
///
/// Ordered by height, then by coefficients in descending lexicographic order,
/// so that `alpha_1` precedes `alpha_2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DepthVector(pub Vec<u32>);

impl DepthVector {
    pub fn zero(n: usize) -> DepthVector {
        DepthVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> DepthVector {
        let mut v = vec![0; n];
        v[i] = 1;
        DepthVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Sum of the coefficients over the nodes in `s`.
    pub fn height_on(&self, s: NodeSet) -> u32 {
        s.iter()
            .filter(|&i| i < self.0.len())
            .map(|i| self.0[i])
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> NodeSet {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, o: &DepthVector) -> DepthVector {
        DepthVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled_add(&self, o: &DepthVector, k: u32) -> DepthVector {
        DepthVector(self.0.iter().zip(&o.0).map(|(a, b)| a + k * b).collect())
    }

    /// `self - o` if it stays nonnegative.
    pub fn checked_sub(&self, o: &DepthVector) -> Option<DepthVector> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DepthVector)
    }

    pub fn plus_unit(&self, i: usize, k: u32) -> DepthVector {
        let mut v = self.clone();
        v.0[i] += k;
        v
    }

    pub fn minus_unit(&self, i: usize, k: u32) -> Option<DepthVector> {
        let mut v = self.clone();
        v.0[i] = v.0[i].checked_sub(k)?;
        Some(v)
    }

    /// Componentwise `self <= o`.
    pub fn le(&self, o: &DepthVector) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// Zero outside `s`.
    pub fn restrict(&self, s: NodeSet) -> DepthVector {
        DepthVector(
            (0..self.0.len())
                .map(|i| if s.contains(i) { self.0[i] } else { 0 })
                .collect(),
        )
    }
}

impl Ord for DepthVector {
    fn cmp(&self, o: &DepthVector) -> Ordering {
        self.height()
            .cmp(&o.height())
            .then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for DepthVector {
    fn partial_cmp(&self, o: &DepthVector) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for DepthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for DepthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("a{i}")
                } else {
                    format!("{c}a{i}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "lambda")
        } else {
            write!(f, "lambda - ({})", terms.join(" + "))
        }
    }
}

/// Every depth vector supported in `support` with height at most `h`, in canonical order.
pub fn depths_up_to(n: usize, h: u32, support: NodeSet) -> Vec<DepthVector> {
    let nodes: Vec<usize> = support.iter().filter(|&i| i < n).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(nodes: &[usize], k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DepthVector>) {
        if k == nodes.len() {
            out.push(DepthVector(cur.clone()));
            return;
        }
        for c in 0..=left {
            cur[nodes[k]] = c;
            rec(nodes, k + 1, left - c, cur, out);
        }
        cur[nodes[k]] = 0;
    }
    rec(&nodes, 0, h, &mut cur, &mut out);
    out.sort();
    out
}

/// Depth vectors of height exactly `h` supported in `support`.
pub fn depths_of_height(n: usize, h: u32, support: NodeSet) -> Vec<DepthVector> {
    depths_up_to(n, h, support)
        .into_iter()
        .filter(|d| d.height() == h)
        .collect()
}

/// The pairings `<lambda, alpha_i^vee>`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HighestWeight(pub Vec<Rat>);

impl HighestWeight {
    pub fn new(p: Vec<Rat>) -> HighestWeight {
        HighestWeight(p)
    }

    pub fn from_ints(v: &[i64]) -> HighestWeight {
        HighestWeight(v.iter().map(|&x| Rat::from(x)).collect())
    }

    pub fn zero(n: usize) -> HighestWeight {
        HighestWeight(vec![Rat::ZERO; n])
    }

    /// Comma separated rationals, e.g. `3,-1/2`.
    pub fn parse(s: &str) -> Result<HighestWeight> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<Rat>()
                    .map_err(|e| Error::Parse(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(HighestWeight)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Rat {
        self.0[i]
    }

    pub fn check_rank(&self, gcm: &Gcm) -> Result<()> {
        if self.rank() != gcm.rank() {
            return Err(Error::RankMismatch {
                expected: gcm.rank(),
                got: self.rank(),
            });
        }
        Ok(())
    }

    /// `lambda_i` as a nonnegative integer, if it is one.
    pub fn dominant_at(&self, i: usize) -> Option<u32> {
        self.0[i]
            .as_nonneg_int()
            .and_then(|v| u32::try_from(v).ok())
    }

    /// The pairings of `lambda - beta`.
    pub fn shifted(&self, gcm: &Gcm, beta: &DepthVector) -> HighestWeight {
        HighestWeight(
            (0..self.rank())
                .map(|i| pairing(gcm, self, beta, i))
                .collect(),
        )
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(Rat::to_string).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// `<lambda - beta, alpha_i^vee> = lambda_i - sum_j a[i][j] beta_j`.
pub fn pairing(gcm: &Gcm, lambda: &HighestWeight, beta: &DepthVector, i: usize) -> Rat {
    let s: i64 = (0..gcm.rank())
        .map(|j| gcm.entry(i, j) * beta.0[j] as i64)
        .sum();
    lambda.0[i] - Rat::from(s)
}

/// Nodes where `lambda` pairs to a nonnegative integer.
pub fn j_lambda(lambda: &HighestWeight) -> NodeSet {
    (0..lambda.rank())
        .filter(|&i| lambda.dominant_at(i).is_some())
        .collect()
}

/// Fails unless `j` lies in `J_lambda`.
pub fn require_integrable(lambda: &HighestWeight, j: NodeSet) -> Result<()> {
    match j
        .iter()
        .find(|&i| i >= lambda.rank() || lambda.dominant_at(i).is_none())
    {
        Some(i) if i >= lambda.rank() => Err(Error::NodeOutOfRange {
            node: i,
            rank: lambda.rank(),
        }),
        Some(i) => Err(Error::JNotIntegrableForLambda(i)),
        None => Ok(()),
    }
}

/// Dot action of the commuting product of `s_i`, `i` in the independent set `h`.
///
/// Returns the new pairings and the depth `sum_{i in h} (lambda_i + 1) alpha_i`.
pub fn dot_reflect(
    gcm: &Gcm,
    lambda: &HighestWeight,
    h: NodeSet,
) -> Result<(HighestWeight, DepthVector)> {
    h.check_range(gcm.rank())?;
    if !gcm.is_independent(h) {
        return Err(Error::NotIndependent(h));
    }
    let mut depth = DepthVector::zero(gcm.rank());
    for i in h.iter() {
        let li = lambda.dominant_at(i).ok_or(Error::NotDominantOnH(i))?;
        depth.0[i] = li + 1;
    }
    Ok((lambda.shifted(gcm, &depth), depth))
}

/// Reflects `lambda - beta` by `s_j`, `j` in `J`, while the pairing is negative and
/// the result stays in `lambda - Z_{>=0} Pi`; lowest admissible node first.
///
/// Returns the final depth and the word of applied reflections.
pub fn dominant_conjugate(
    gcm: &Gcm,
    lambda: &HighestWeight,
    beta: &DepthVector,
    j: NodeSet,
) -> (DepthVector, Vec<usize>) {
    let mut cur = beta.clone();
    let mut word = Vec::new();
    'outer: loop {
        for i in j.iter().filter(|&i| i < gcm.rank()) {
            let p = pairing(gcm, lambda, &cur, i);
            let Some(p) = p.as_int() else { continue };
            if p < 0 && (cur.0[i] as i128) + p >= 0 {
                cur.0[i] = (cur.0[i] as i128 + p) as u32;
                word.push(i);
                continue 'outer;
            }
        }
        return (cur, word);
    }
}

/// A set of depth vectors below `lambda`, truncated at height `H`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TruncatedWeightSet {
    pub lambda: HighestWeight,
    #[serde(rename = "H")]
    pub height: u32,
    pub depths: BTreeSet<DepthVector>,
}

impl TruncatedWeightSet {
    pub fn new(lambda: HighestWeight, height: u32) -> TruncatedWeightSet {
        TruncatedWeightSet {
            lambda,
            height,
            depths: BTreeSet::new(),
        }
    }

    /// Members are filtered to height at most `height`.
    pub fn from_depths<I: IntoIterator<Item = DepthVector>>(
        lambda: HighestWeight,
        height: u32,
        depths: I,
    ) -> TruncatedWeightSet {
        let depths = depths
            .into_iter()
            .filter(|d| d.height() <= height)
            .collect();
        TruncatedWeightSet {
            lambda,
            height,
            depths,
        }
    }

    /// `{lambda}`.
    pub fn top(lambda: HighestWeight, height: u32) -> TruncatedWeightSet {
        let n = lambda.rank();
        TruncatedWeightSet::from_depths(lambda, height, [DepthVector::zero(n)])
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn contains(&self, d: &DepthVector) -> bool {
        self.depths.contains(d)
    }

    pub fn insert(&mut self, d: DepthVector) -> bool {
        assert!(d.height() <= self.height, "depth above truncation height");
        self.depths.insert(d)
    }

    pub fn len(&self) -> usize {
        self.depths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depths.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &DepthVector> {
        self.depths.iter()
    }

    /// Members supported in `s`.
    pub fn restrict_support(&self, s: NodeSet) -> TruncatedWeightSet {
        let depths = self
            .depths
            .iter()
            .filter(|d| d.support().is_subset(s))
            .cloned()
            .collect();
        TruncatedWeightSet {
            lambda: self.lambda.clone(),
            height: self.height,
            depths,
        }
    }

    /// The same set cut down to height `h <= H`.
    pub fn truncate(&self, h: u32) -> TruncatedWeightSet {
        assert!(h <= self.height, "cannot raise the truncation height");
        TruncatedWeightSet::from_depths(self.lambda.clone(), h, self.depths.iter().cloned())
    }

    /// Set equality; sets truncated at different heights are not comparable.
    pub fn same_as(&self, o: &TruncatedWeightSet) -> Result<bool> {
        if self.height != o.height {
            return Err(Error::HeightMismatch(self.height, o.height));
        }
        Ok(self.lambda == o.lambda && self.depths == o.depths)
    }

    /// A nonzero member with no `i` such that `beta - e_i` is a member, if any.
    pub fn reaching_violation(&self) -> Option<DepthVector> {
        self.depths
            .iter()
            .find(|d| {
                !d.is_zero()
                    && !d
                        .support()
                        .iter()
                        .any(|i| self.contains(&d.minus_unit(i, 1).unwrap()))
            })
            .cloned()
    }
}

/// `{s + sum n_g g}` truncated at height `h`. Heights add, so the truncation is exact.
pub fn cone_subtract(
    s: &TruncatedWeightSet,
    gens: &[DepthVector],
    h: u32,
) -> Result<TruncatedWeightSet> {
    if h > s.height {
        return Err(Error::InsufficientHeight {
            required: h,
            available: s.height,
        });
    }
    assert!(
        gens.iter().all(|g| !g.is_zero()),
        "cone generators must be nonzero"
    );
    let mut out = s.truncate(h);
    let mut queue: VecDeque<DepthVector> = out.depths.iter().cloned().collect();
    while let Some(d) = queue.pop_front() {
        for g in gens {
            let e = d.add(g);
            if e.height() <= h && out.depths.insert(e.clone()) {
                queue.push_back(e);
            }
        }
    }
    Ok(out)
}
