//! Verma module actions, submodule closure and quotient modules.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Engine, MAX_ENGINE_HEIGHT};
use crate::cartan::NodeSet;
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::rational::Rat;
use crate::weights::{depths_up_to, j_lambda, DepthVector, HighestWeight, TruncatedWeightSet};

/// A weight vector of `M(lambda)`: coordinates in the PBW basis of its depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVector {
    pub depth: DepthVector,
    pub coords: Vec<Rat>,
}

impl GradedVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E(usize),
    F(usize),
    H(usize),
}

/// A generating relation: an operator word `[(node, exponent), ...]` applied to
/// `v_lambda` (read left to right as written), or an explicit vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Relation {
    Word(Vec<(usize, u32)>),
    Vector(GradedVector),
}

/// `M(lambda)` modulo the submodule generated by the relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulePresentation {
    pub lambda: HighestWeight,
    pub relations: Vec<Relation>,
}

impl ModulePresentation {
    pub fn new(lambda: HighestWeight, relations: Vec<Relation>) -> ModulePresentation {
        ModulePresentation { lambda, relations }
    }

    pub fn verma(lambda: HighestWeight) -> ModulePresentation {
        ModulePresentation {
            lambda,
            relations: Vec::new(),
        }
    }

    /// `M(lambda, J)`: relations `f_j^{lambda_j + 1}` for `j` in `J`.
    pub fn parabolic_verma(lambda: HighestWeight, j: NodeSet) -> Result<ModulePresentation> {
        crate::weights::require_integrable(&lambda, j)?;
        let relations = j
            .iter()
            .map(|i| Relation::Word(vec![(i, lambda.dominant_at(i).unwrap() + 1)]))
            .collect();
        Ok(ModulePresentation { lambda, relations })
    }

    /// `M(lambda, J_lambda)`, whose weights are those of `L(lambda)`.
    pub fn max_integrable(lambda: HighestWeight) -> ModulePresentation {
        let j = j_lambda(&lambda);
        ModulePresentation::parabolic_verma(lambda, j).unwrap()
    }

    pub fn word(word: &[(usize, u32)]) -> Relation {
        Relation::Word(word.to_vec())
    }
}

/// Action of `g` on the Verma module `M(lambda)`.
#[derive(Clone, Debug)]
pub struct Verma {
    engine: Engine,
    lambda: HighestWeight,
}

impl Verma {
    pub fn new(engine: &Engine, lambda: &HighestWeight) -> Result<Verma> {
        lambda.check_rank(engine.gcm())?;
        Ok(Verma {
            engine: engine.clone(),
            lambda: lambda.clone(),
        })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn lambda(&self) -> &HighestWeight {
        &self.lambda
    }

    pub fn rank(&self) -> usize {
        self.engine.rank()
    }

    pub fn dim(&self, depth: &DepthVector) -> usize {
        self.engine.verma_dim(depth)
    }

    pub fn zero(&self, depth: &DepthVector) -> GradedVector {
        GradedVector {
            depth: depth.clone(),
            coords: vec![Rat::ZERO; self.dim(depth)],
        }
    }

    /// `v_lambda`.
    pub fn top(&self) -> GradedVector {
        GradedVector {
            depth: DepthVector::zero(self.rank()),
            coords: vec![Rat::ONE],
        }
    }

    /// The PBW basis vector number `k` at `depth`.
    pub fn basis_vector(&self, depth: &DepthVector, k: usize) -> GradedVector {
        let mut v = self.zero(depth);
        v.coords[k] = Rat::ONE;
        v
    }

    pub fn apply_f(&self, i: usize, v: &GradedVector) -> Result<GradedVector> {
        let depth = v.depth.plus_unit(i, 1);
        if depth.height() > MAX_ENGINE_HEIGHT {
            return Err(Error::HeightOverflow {
                height: depth.height(),
                bound: MAX_ENGINE_HEIGHT,
            });
        }
        let pbw = self.engine.pbw();
        let src = pbw.basis(&v.depth);
        let dst = pbw.basis(&depth);
        let fi = self.engine.algebra().simple(i) as u16;
        let mut out = vec![Rat::ZERO; dst.dim()];
        for (k, c) in v.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (m, x) in pbw.mult(fi, &src.monomials[k]).iter() {
                out[dst.index[m]] += *c * Rat::from(*x);
            }
        }
        Ok(GradedVector { depth, coords: out })
    }

    /// `e_i v`; `None` stands for the zero vector above the top.
    pub fn apply_e(&self, i: usize, v: &GradedVector) -> Option<GradedVector> {
        let depth = v.depth.minus_unit(i, 1)?;
        let cols = self.e_columns(i, &v.depth);
        let mut out = vec![Rat::ZERO; self.dim(&depth)];
        for (k, c) in v.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(r, x) in &cols[k] {
                out[r] += *c * x;
            }
        }
        Some(GradedVector { depth, coords: out })
    }

    pub fn apply_h(&self, i: usize, v: &GradedVector) -> GradedVector {
        let p = crate::weights::pairing(self.engine.gcm(), &self.lambda, &v.depth, i);
        GradedVector {
            depth: v.depth.clone(),
            coords: v.coords.iter().map(|&c| c * p).collect(),
        }
    }

    pub fn act(&self, g: Generator, v: &GradedVector) -> Result<Option<GradedVector>> {
        Ok(match g {
            Generator::E(i) => self.apply_e(i, v),
            Generator::F(i) => Some(self.apply_f(i, v)?),
            Generator::H(i) => Some(self.apply_h(i, v)),
        })
    }

    /// Sparse columns of `e_i` from `depth` to `depth - e_i`: for each basis monomial,
    /// the list of `(row, coefficient)`.
    pub fn e_columns(&self, i: usize, depth: &DepthVector) -> Vec<Vec<(usize, Rat)>> {
        let Some(target) = depth.minus_unit(i, 1) else {
            return vec![Vec::new(); self.dim(depth)];
        };
        let pbw = self.engine.pbw();
        let src = pbw.basis(depth);
        let dst = pbw.basis(&target);
        let li = self.lambda.get(i);
        src.monomials
            .iter()
            .map(|m| {
                pbw.raise(i, m)
                    .iter()
                    .filter_map(|t| {
                        let c = Rat::from(t.constant) + Rat::from(t.lambda_coeff) * li;
                        (!c.is_zero()).then(|| (dst.index[&t.monomial], c))
                    })
                    .collect()
            })
            .collect()
    }

    /// The word `[(i_1, c_1), ..., (i_k, c_k)]` evaluated as `f_{i_1}^{c_1} ... f_{i_k}^{c_k} v_lambda`.
    pub fn word_vector(&self, word: &[(usize, u32)]) -> Result<GradedVector> {
        let mut v = self.top();
        for &(i, c) in word.iter().rev() {
            if i >= self.rank() {
                return Err(Error::NodeOutOfRange {
                    node: i,
                    rank: self.rank(),
                });
            }
            for _ in 0..c {
                v = self.apply_f(i, &v)?;
            }
        }
        Ok(v)
    }

    pub fn relation_vector(&self, r: &Relation) -> Result<GradedVector> {
        match r {
            Relation::Word(w) => self.word_vector(w),
            Relation::Vector(v) => {
                if v.depth.rank() != self.rank() {
                    return Err(Error::RankMismatch {
                        expected: self.rank(),
                        got: v.depth.rank(),
                    });
                }
                if v.coords.len() != self.dim(&v.depth) {
                    return Err(Error::Parse(format!(
                        "vector at depth {:?} needs {} coordinates",
                        v.depth.0,
                        self.dim(&v.depth)
                    )));
                }
                Ok(v.clone())
            }
        }
    }
}

/// A graded subspace of `M(lambda)` truncated at a height; missing depths are zero.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub height: u32,
    pub spaces: BTreeMap<DepthVector, RowSpace>,
}

impl GradedSubspace {
    pub fn dim(&self, d: &DepthVector) -> usize {
        self.spaces.get(d).map_or(0, RowSpace::rank)
    }

    pub fn contains(&self, v: &GradedVector) -> bool {
        assert!(
            v.depth.height() <= self.height,
            "vector above truncation height"
        );
        v.is_zero()
            || self
                .spaces
                .get(&v.depth)
                .is_some_and(|s| s.contains(&v.coords))
    }

    /// Canonical representative of `v` modulo the subspace.
    pub fn reduce(&self, v: &GradedVector) -> GradedVector {
        let mut w = v.clone();
        if let Some(s) = self.spaces.get(&v.depth) {
            s.reduce(&mut w.coords);
        }
        w
    }
}

/// `U(g)` applied to the generators, truncated at height `h`.
///
/// First the generators are closed under the raising operators; the result is then
/// swept by the lowering operators in order of height, which is exact up to `h`.
pub fn submodule_closure(verma: &Verma, gens: &[GradedVector], h: u32) -> Result<GradedSubspace> {
    if h > MAX_ENGINE_HEIGHT {
        return Err(Error::HeightOverflow {
            height: h,
            bound: MAX_ENGINE_HEIGHT,
        });
    }
    let n = verma.rank();
    let mut up: BTreeMap<DepthVector, RowSpace> = BTreeMap::new();
    let mut work: Vec<GradedVector> = Vec::new();
    for g in gens {
        if g.depth.height() > h {
            return Err(Error::HeightOverflow {
                height: g.depth.height(),
                bound: h,
            });
        }
        let space = up
            .entry(g.depth.clone())
            .or_insert_with(|| RowSpace::new(verma.dim(&g.depth)));
        if space.insert(g.coords.clone()) {
            work.push(g.clone());
        }
    }
    while let Some(v) = work.pop() {
        for i in 0..n {
            let Some(w) = verma.apply_e(i, &v) else {
                continue;
            };
            if w.is_zero() {
                continue;
            }
            let space = up
                .entry(w.depth.clone())
                .or_insert_with(|| RowSpace::new(verma.dim(&w.depth)));
            if space.insert(w.coords.clone()) {
                work.push(w);
            }
        }
    }
    let mut spaces: BTreeMap<DepthVector, RowSpace> = BTreeMap::new();
    for d in depths_up_to(n, h, NodeSet::full(n)) {
        let mut space = up
            .remove(&d)
            .unwrap_or_else(|| RowSpace::new(verma.dim(&d)));
        for i in 0..n {
            if space.is_full() {
                break;
            }
            let Some(below) = d.minus_unit(i, 1) else {
                continue;
            };
            let Some(src) = spaces.get(&below) else {
                continue;
            };
            for row in src.basis() {
                let v = GradedVector {
                    depth: below.clone(),
                    coords: row.clone(),
                };
                space.insert(verma.apply_f(i, &v)?.coords);
                if space.is_full() {
                    break;
                }
            }
        }
        if space.rank() > 0 {
            spaces.insert(d, space);
        }
    }
    Ok(GradedSubspace { height: h, spaces })
}

/// A quotient `V = M(lambda) / K` computed up to a height.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    verma: Verma,
    presentation: ModulePresentation,
    kernel: GradedSubspace,
}

impl QuotientModule {
    /// Fails with `ZeroModule` if the relations generate `v_lambda`.
    pub fn new(
        engine: &Engine,
        presentation: &ModulePresentation,
        h: u32,
    ) -> Result<QuotientModule> {
        let verma = Verma::new(engine, &presentation.lambda)?;
        let gens = presentation
            .relations
            .iter()
            .map(|r| verma.relation_vector(r))
            .collect::<Result<Vec<_>>>()?;
        let kernel = submodule_closure(&verma, &gens, h)?;
        if kernel.dim(&DepthVector::zero(verma.rank())) > 0 {
            return Err(Error::ZeroModule);
        }
        Ok(QuotientModule {
            verma,
            presentation: presentation.clone(),
            kernel,
        })
    }

    pub fn verma(&self) -> &Verma {
        &self.verma
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.presentation
    }

    pub fn lambda(&self) -> &HighestWeight {
        &self.presentation.lambda
    }

    pub fn height(&self) -> u32 {
        self.kernel.height
    }

    pub fn kernel(&self) -> &GradedSubspace {
        &self.kernel
    }

    /// `dim V_{lambda - d}`.
    pub fn dim(&self, d: &DepthVector) -> usize {
        assert!(d.height() <= self.height(), "depth above truncation height");
        self.verma.dim(d) - self.kernel.dim(d)
    }

    pub fn dims(&self) -> BTreeMap<DepthVector, usize> {
        let n = self.verma.rank();
        depths_up_to(n, self.height(), NodeSet::full(n))
            .into_iter()
            .map(|d| (d.clone(), self.dim(&d)))
            .collect()
    }

    pub fn weights(&self) -> TruncatedWeightSet {
        let n = self.verma.rank();
        let depths = depths_up_to(n, self.height(), NodeSet::full(n))
            .into_iter()
            .filter(|d| self.dim(d) > 0);
        TruncatedWeightSet::from_depths(self.lambda().clone(), self.height(), depths)
    }

    /// Image of the word applied to `v_lambda` in `V`, reduced modulo the kernel;
    /// `None` when it vanishes.
    pub fn monomial_apply(&self, word: &[(usize, u32)]) -> Result<Option<GradedVector>> {
        let h: u32 = word.iter().map(|&(_, c)| c).sum();
        if h > self.height() {
            return Err(Error::HeightOverflow {
                height: h,
                bound: self.height(),
            });
        }
        let v = self.kernel.reduce(&self.verma.word_vector(word)?);
        Ok((!v.is_zero()).then_some(v))
    }

    /// Nodes `i` in `J_lambda` with `f_i^{lambda_i + 1} v_lambda = 0` in `V`.
    pub fn integrability(&self) -> Result<NodeSet> {
        let mut out = NodeSet::EMPTY;
        for i in j_lambda(self.lambda()).iter() {
            let k = self.lambda().dominant_at(i).unwrap() + 1;
            if k > self.height() {
                return Err(Error::InsufficientHeight {
                    required: k,
                    available: self.height(),
                });
            }
            if self.monomial_apply(&[(i, k)])?.is_none() {
                out.insert(i);
            }
        }
        Ok(out)
    }
}

/// Integer-coefficient vectors of `M(lambda)` keyed by monomial, for tests and callers
/// that build vectors from explicit `U(n^-)` elements.
pub fn element_vector(verma: &Verma, depth: &DepthVector, x: &[(Vec<u16>, i64)]) -> GradedVector {
    let basis = verma.engine().pbw().basis(depth);
    let mut v = verma.zero(depth);
    let index: &HashMap<Vec<u16>, usize> = &basis.index;
    for (m, c) in x {
        v.coords[index[m]] += Rat::from(*c);
    }
    v
}
