//! Largest submodules of `M(lambda)` avoiding a set of weights, and the Shapovalov form.
//!
//! For a down-closed set `F` of forbidden depths containing `0`, the largest submodule
//! `N` with no weights in `F` is `N_d = 0` for `d` in `F` and otherwise
//! `N_d = {v : e_i v in N_{d - e_i} for all i}`. It is recorded by functionals whose
//! common kernel at each depth is `N_d`; their rank is `dim (M / N)_d`.

use std::collections::BTreeMap;

use super::module::{GradedVector, Verma};
use super::{Engine, MAX_ENGINE_HEIGHT};
use crate::cartan::NodeSet;
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::rational::Rat;
use crate::weights::{
    depths_up_to, require_integrable, DepthVector, HighestWeight, TruncatedWeightSet,
};

#[derive(Clone, Debug)]
pub struct Radical {
    lambda: HighestWeight,
    height: u32,
    forms: BTreeMap<DepthVector, RowSpace>,
}

impl Radical {
    /// `depths` must be down-closed and sorted by height.
    fn compute(
        verma: &Verma,
        depths: &[DepthVector],
        forbidden: &dyn Fn(&DepthVector) -> bool,
    ) -> Radical {
        let n = verma.rank();
        let mut forms: BTreeMap<DepthVector, RowSpace> = BTreeMap::new();
        for d in depths {
            let dim = verma.dim(d);
            if d.is_zero() || forbidden(d) {
                forms.insert(d.clone(), RowSpace::full(dim));
                continue;
            }
            let mut space = RowSpace::new(dim);
            for i in 0..n {
                if space.is_full() {
                    break;
                }
                let Some(below) = d.minus_unit(i, 1) else {
                    continue;
                };
                let above = &forms[&below];
                if above.rank() == 0 {
                    continue;
                }
                let cols = verma.e_columns(i, d);
                for phi in above.basis() {
                    let psi: Vec<Rat> = cols
                        .iter()
                        .map(|col| col.iter().map(|&(r, c)| phi[r] * c).sum())
                        .collect();
                    space.insert(psi);
                    if space.is_full() {
                        break;
                    }
                }
            }
            forms.insert(d.clone(), space);
        }
        let height = depths.iter().map(DepthVector::height).max().unwrap_or(0);
        Radical {
            lambda: verma.lambda().clone(),
            height,
            forms,
        }
    }

    /// `dim (M / N)_d`.
    pub fn quotient_dim(&self, d: &DepthVector) -> usize {
        self.forms
            .get(d)
            .expect("depth outside the computed range")
            .rank()
    }

    /// Whether `v` lies in `N`.
    pub fn contains(&self, v: &GradedVector) -> bool {
        let space = self
            .forms
            .get(&v.depth)
            .expect("depth outside the computed range");
        space.basis().iter().all(|phi| {
            phi.iter()
                .zip(&v.coords)
                .map(|(a, b)| *a * *b)
                .sum::<Rat>()
                .is_zero()
        })
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Weights of `M / N` (all depths of height up to the bound must have been computed).
    pub fn weights(&self) -> TruncatedWeightSet {
        let depths = self
            .forms
            .iter()
            .filter(|(_, s)| s.rank() > 0)
            .map(|(d, _)| d.clone());
        TruncatedWeightSet::from_depths(self.lambda.clone(), self.height, depths)
    }

    pub fn dims(&self) -> BTreeMap<DepthVector, usize> {
        self.forms
            .iter()
            .map(|(d, s)| (d.clone(), s.rank()))
            .collect()
    }
}

fn check_height(h: u32) -> Result<()> {
    if h > MAX_ENGINE_HEIGHT {
        return Err(Error::HeightOverflow {
            height: h,
            bound: MAX_ENGINE_HEIGHT,
        });
    }
    Ok(())
}

/// Rank of the contravariant form on `M(lambda)_{lambda - depth}`, i.e. `dim L(lambda)_{lambda - depth}`.
pub fn shapovalov_rank(
    engine: &Engine,
    lambda: &HighestWeight,
    depth: &DepthVector,
) -> Result<usize> {
    check_height(depth.height())?;
    let verma = Verma::new(engine, lambda)?;
    let n = engine.rank();
    let below: Vec<DepthVector> = depths_up_to(n, depth.height(), NodeSet::full(n))
        .into_iter()
        .filter(|d| d.le(depth))
        .collect();
    Ok(Radical::compute(&verma, &below, &|_| false).quotient_dim(depth))
}

/// `dim L(lambda)_{lambda - d}` for every depth of height at most `h`.
pub fn simple_module_dims(engine: &Engine, lambda: &HighestWeight, h: u32) -> Result<Radical> {
    check_height(h)?;
    let verma = Verma::new(engine, lambda)?;
    let n = engine.rank();
    Ok(Radical::compute(
        &verma,
        &depths_up_to(n, h, NodeSet::full(n)),
        &|_| false,
    ))
}

/// The largest submodule whose weights with independent support all meet `J`
/// (for `J` empty: whose weights all have non-independent support).
pub fn construct_n_lambda_j(
    engine: &Engine,
    lambda: &HighestWeight,
    j: NodeSet,
    h: u32,
) -> Result<Radical> {
    check_height(h)?;
    require_integrable(lambda, j)?;
    let verma = Verma::new(engine, lambda)?;
    let gcm = engine.gcm().clone();
    let n = engine.rank();
    let forbidden = move |d: &DepthVector| {
        let s = d.support();
        gcm.is_independent(s) && s.intersection(j).is_empty()
    };
    Ok(Radical::compute(
        &verma,
        &depths_up_to(n, h, NodeSet::full(n)),
        &forbidden,
    ))
}

/// `e_a v` for the raising root vector `e_a`, the image of `f_a` under the
/// anti-involution swapping `e_i` and `f_i`.
fn apply_e_root(verma: &Verma, a: usize, v: &GradedVector) -> Option<GradedVector> {
    let cb = verma.engine().algebra();
    if let Some(i) = cb.simple_node(a) {
        return verma.apply_e(i, v);
    }
    let (i, b, d) = cb.definition(a).expect("non-simple root has a definition");
    // f_a = [f_i, f_b] / d, so e_a = [e_b, e_i] / d
    let x = apply_e_root(verma, b, &verma.apply_e(i, v)?);
    let y = apply_e_root(verma, b, v).and_then(|w| verma.apply_e(i, &w));
    let depth = v.depth.checked_sub(cb.root(a))?;
    let mut out = verma.zero(&depth);
    let inv = Rat::from(d).recip();
    if let Some(x) = x {
        for (o, c) in out.coords.iter_mut().zip(&x.coords) {
            *o += *c * inv;
        }
    }
    if let Some(y) = y {
        for (o, c) in out.coords.iter_mut().zip(&y.coords) {
            *o -= *c * inv;
        }
    }
    Some(out)
}

/// Gram matrix `<x_a v, x_b v>` of the contravariant form on the PBW basis at `depth`,
/// evaluated by applying the transposed monomial to each basis vector.
pub fn gram_matrix(verma: &Verma, depth: &DepthVector) -> Vec<Vec<Rat>> {
    let basis = verma.engine().verma_component(depth);
    let dim = basis.dim();
    let mut g = vec![vec![Rat::ZERO; dim]; dim];
    for (a, ma) in basis.monomials.iter().enumerate() {
        for b in 0..dim {
            // transpose of f_{m0} ... f_{mk} is e_{mk} ... e_{m0}; e_{m0} acts first
            let mut w = Some(verma.basis_vector(depth, b));
            for &r in ma {
                w = w.and_then(|w| apply_e_root(verma, r as usize, &w));
            }
            g[a][b] = w.map_or(Rat::ZERO, |w| w.coords[0]);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Gcm;
    use crate::linalg::rank;

    fn engine(t: &str) -> Engine {
        Engine::new(&Gcm::from_type(t).unwrap()).unwrap()
    }

    fn dv(v: &[u32]) -> DepthVector {
        DepthVector(v.to_vec())
    }

    #[test]
    fn sl2_ranks() {
        let e = engine("A1");
        let l = HighestWeight::from_ints(&[3]);
        for k in 0..=3 {
            assert_eq!(shapovalov_rank(&e, &l, &dv(&[k])).unwrap(), 1);
        }
        assert_eq!(shapovalov_rank(&e, &l, &dv(&[4])).unwrap(), 0);
        assert_eq!(
            shapovalov_rank(&e, &HighestWeight::from_ints(&[-1]), &dv(&[6])).unwrap(),
            1
        );
    }

    #[test]
    fn trivial_module() {
        let e = engine("A2");
        let r = simple_module_dims(&e, &HighestWeight::from_ints(&[0, 0]), 6).unwrap();
        assert_eq!(r.weights().len(), 1);
    }

    /// Weyl dimension formula for sl3: dim L(a, b) = (a+1)(b+1)(a+b+2)/2.
    #[test]
    fn sl3_total_dimensions() {
        let e = engine("A2");
        for (a, b) in [(1, 0), (1, 1), (2, 1), (3, 0), (2, 2)] {
            let r = simple_module_dims(&e, &HighestWeight::from_ints(&[a, b]), 12).unwrap();
            let total: usize = r.dims().values().sum();
            assert_eq!(
                total as i64,
                (a + 1) * (b + 1) * (a + b + 2) / 2,
                "({a},{b})"
            );
        }
    }

    #[test]
    fn gram_rank_agrees_with_recursion() {
        for (t, ls) in [
            (
                "A2",
                vec![vec![0, 0], vec![1, -2], vec![-1, -1], vec![2, 1]],
            ),
            ("B2", vec![vec![0, 0], vec![1, 0], vec![-1, 2]]),
            ("G2", vec![vec![0, 1], vec![-1, -1]]),
        ] {
            let e = engine(t);
            for l in ls {
                let l = HighestWeight::from_ints(&l);
                let verma = Verma::new(&e, &l).unwrap();
                let rec = simple_module_dims(&e, &l, 4).unwrap();
                for d in depths_up_to(2, 4, NodeSet::full(2)) {
                    let g = gram_matrix(&verma, &d);
                    assert_eq!(rank(g.len(), g), rec.quotient_dim(&d), "{t} {l} {d:?}");
                }
            }
        }
    }

    #[test]
    fn gram_matrix_is_contravariant() {
        let e = engine("B2");
        let l = HighestWeight::parse("1,-1/2").unwrap();
        let verma = Verma::new(&e, &l).unwrap();
        for d in depths_up_to(2, 3, NodeSet::full(2)) {
            for i in 0..2 {
                let up = d.plus_unit(i, 1);
                let g_up = gram_matrix(&verma, &up);
                let g = gram_matrix(&verma, &d);
                for x in 0..verma.dim(&d) {
                    for y in 0..verma.dim(&up) {
                        let fx = verma.apply_f(i, &verma.basis_vector(&d, x)).unwrap();
                        let ey = verma.apply_e(i, &verma.basis_vector(&up, y)).unwrap();
                        // <f_i x, y> = sum_a (f_i x)_a G_up[a][y];  <x, e_i y> = sum_b G[x][b] (e_i y)_b
                        let lhs: Rat = fx
                            .coords
                            .iter()
                            .enumerate()
                            .map(|(a, c)| *c * g_up[a][y])
                            .sum();
                        let rhs: Rat = ey
                            .coords
                            .iter()
                            .enumerate()
                            .map(|(b, c)| g[x][b] * *c)
                            .sum();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn n_lambda_j_examples() {
        // no edges: N(0) = 0
        let e = engine("A1xA1");
        let r = construct_n_lambda_j(&e, &HighestWeight::from_ints(&[0, 0]), NodeSet::EMPTY, 6)
            .unwrap();
        for (d, k) in r.dims() {
            assert_eq!(k, e.verma_dim(&d));
        }
        // N(0, J_lambda) is the maximal submodule
        let e = engine("A2");
        let l = HighestWeight::from_ints(&[0, 0]);
        let r = construct_n_lambda_j(&e, &l, NodeSet::full(2), 6).unwrap();
        assert_eq!(r.weights().len(), 1);
        // f_1^2 f_2 v_0 lies in N(0)
        let r = construct_n_lambda_j(&e, &l, NodeSet::EMPTY, 6).unwrap();
        let v = Verma::new(&e, &l)
            .unwrap()
            .word_vector(&[(0, 2), (1, 1)])
            .unwrap();
        assert!(r.contains(&v));
        let v = Verma::new(&e, &l)
            .unwrap()
            .word_vector(&[(1, 1), (0, 2)])
            .unwrap();
        assert!(!r.contains(&v));
    }

    #[test]
    fn n_lambda_j_is_monotone_in_j() {
        let e = engine("A3");
        let l = HighestWeight::from_ints(&[1, 0, 2]);
        let h = 5;
        let subsets: Vec<NodeSet> = NodeSet::full(3).subsets().collect();
        let dims: Vec<_> = subsets
            .iter()
            .map(|&j| construct_n_lambda_j(&e, &l, j, h).unwrap().dims())
            .collect();
        for (a, ja) in subsets.iter().enumerate() {
            for (b, jb) in subsets.iter().enumerate() {
                if ja.is_subset(*jb) {
                    // bigger submodule, smaller quotient
                    for (d, k) in &dims[a] {
                        assert!(dims[b][d] <= *k);
                    }
                }
            }
        }
    }
}
