//! Structure constants of a finite-type Kac-Moody algebra in a Chevalley basis.
//!
//! Negative root vectors are built recursively as `f_gamma = [f_i, f_beta] / (p + 1)`
//! and identified through their images under the raising operators `e_j`, which
//! determine an element of `n^-` of height at least two.

use std::collections::HashMap;

use crate::cartan::Gcm;
use crate::error::{Error, Result};
use crate::roots::finite_root_system;
use crate::weights::DepthVector;

/// Largest rank the engine accepts.
pub const MAX_ENGINE_RANK: usize = 4;

/// The bracket `[e_i, f_a]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Raise {
    Zero,
    /// `f_a = f_i`, so the bracket is the coroot `h_i`.
    Coroot,
    /// `coeff * f_root`, where `root = a - alpha_i`.
    Root {
        root: usize,
        coeff: i64,
    },
}

#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    gcm: Gcm,
    roots: Vec<DepthVector>,
    index: HashMap<DepthVector, usize>,
    simple: Vec<usize>,
    /// `raise[i][a] = [e_i, f_a]`.
    raise: Vec<Vec<Raise>>,
    /// `bracket[a][b] = [f_a, f_b]` as `(root, constant)`.
    bracket: Vec<Vec<Option<(usize, i64)>>>,
    /// `f_a = [f_i, f_b] / d` for non-simple `a`, as `(i, b, d)`.
    definition: Vec<Option<(usize, usize, i64)>>,
}

impl ChevalleyBasis {
    pub fn new(gcm: &Gcm) -> Result<ChevalleyBasis> {
        let rs = finite_root_system(gcm)?;
        let n = gcm.rank();
        if n > MAX_ENGINE_RANK {
            return Err(Error::EngineUnsupported {
                rank: n,
                max: MAX_ENGINE_RANK,
            });
        }
        let roots = rs.depths();
        let r = roots.len();
        let index: HashMap<DepthVector, usize> = roots
            .iter()
            .enumerate()
            .map(|(k, d)| (d.clone(), k))
            .collect();
        let simple: Vec<usize> = (0..n).map(|i| index[&DepthVector::unit(n, i)]).collect();
        let mut cb = ChevalleyBasis {
            gcm: gcm.clone(),
            roots,
            index,
            simple,
            raise: vec![vec![Raise::Zero; r]; n],
            bracket: vec![vec![None; r]; r],
            definition: vec![None; r],
        };
        for i in 0..n {
            cb.raise[i][cb.simple[i]] = Raise::Coroot;
        }
        let max_h = cb.roots.iter().map(DepthVector::height).max().unwrap_or(1);
        for h in 2..=max_h {
            cb.build_layer(h)?;
        }
        cb.fill_brackets()?;
        Ok(cb)
    }

    fn build_layer(&mut self, h: u32) -> Result<()> {
        let n = self.gcm.rank();
        let layer: Vec<usize> = (0..self.roots.len())
            .filter(|&a| self.roots[a].height() == h)
            .collect();
        // define each root vector of this height from the lowest admissible simple node
        for &g in &layer {
            let (i, b) = (0..n)
                .find_map(|i| {
                    self.roots[g]
                        .minus_unit(i, 1)
                        .and_then(|d| self.index.get(&d))
                        .map(|&b| (i, b))
                })
                .expect("every non-simple root has a predecessor");
            let d = self.string_below(b, i) as i64 + 1;
            let raw = self.raise_of_simple_bracket(i, b);
            let mut vec = Vec::with_capacity(n);
            for (j, &c) in raw.iter().enumerate() {
                if c % d != 0 {
                    return Err(Error::InternalMismatch(format!(
                        "non-integral raise of root {g} at node {j}"
                    )));
                }
                vec.push(c / d);
            }
            self.set_raise(g, &vec)?;
            self.definition[g] = Some((i, b, d));
            self.set_bracket(self.simple[i], b, g, d);
        }
        // every other [f_i, f_delta] landing in this layer, by comparing raising images
        for &g in &layer {
            for i in 0..n {
                let Some(delta) = self.roots[g]
                    .minus_unit(i, 1)
                    .and_then(|d| self.index.get(&d).copied())
                else {
                    continue;
                };
                if self.bracket[self.simple[i]][delta].is_some() {
                    continue;
                }
                let raw = self.raise_of_simple_bracket(i, delta);
                let target = self.raise_vector(g);
                let c = proportionality(&raw, &target).ok_or_else(|| {
                    Error::InternalMismatch(format!(
                        "bracket of f_{i} and root {delta} is not a root vector"
                    ))
                })?;
                if c != 0 {
                    self.set_bracket(self.simple[i], delta, g, c);
                }
            }
        }
        Ok(())
    }

    /// Largest `p` with `beta - p alpha_i` a root (or zero).
    fn string_below(&self, b: usize, i: usize) -> u32 {
        let mut p = 0;
        while let Some(d) = self.roots[b].minus_unit(i, p + 1) {
            if !self.index.contains_key(&d) {
                break;
            }
            p += 1;
        }
        p
    }

    /// Coefficients `c_j` with `[e_j, [f_i, f_b]] = c_j f_{alpha_i + b - alpha_j}`.
    fn raise_of_simple_bracket(&self, i: usize, b: usize) -> Vec<i64> {
        let n = self.gcm.rank();
        let beta = &self.roots[b];
        (0..n)
            .map(|j| {
                let mut c = 0;
                if i == j {
                    // [h_i, f_beta] = -<beta, alpha_i^vee> f_beta
                    c -= (0..n)
                        .map(|k| self.gcm.entry(i, k) * beta.get(k) as i64)
                        .sum::<i64>();
                }
                match self.raise[j][b] {
                    Raise::Zero => {}
                    // [f_i, h_j] = <alpha_i, alpha_j^vee> f_i
                    Raise::Coroot => c += self.gcm.entry(j, i),
                    Raise::Root { root, coeff } => {
                        if let Some((_, k)) = self.bracket[self.simple[i]][root] {
                            c += coeff * k;
                        }
                    }
                }
                c
            })
            .collect()
    }

    fn raise_vector(&self, a: usize) -> Vec<i64> {
        (0..self.gcm.rank())
            .map(|j| match self.raise[j][a] {
                Raise::Root { coeff, .. } => coeff,
                Raise::Coroot => 1,
                Raise::Zero => 0,
            })
            .collect()
    }

    fn set_raise(&mut self, g: usize, vec: &[i64]) -> Result<()> {
        for (j, &c) in vec.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let root = self.roots[g]
                .minus_unit(j, 1)
                .and_then(|d| self.index.get(&d).copied())
                .ok_or_else(|| {
                    Error::InternalMismatch(format!("raise of root {g} leaves the root system"))
                })?;
            self.raise[j][g] = Raise::Root { root, coeff: c };
        }
        Ok(())
    }

    fn set_bracket(&mut self, a: usize, b: usize, g: usize, c: i64) {
        self.bracket[a][b] = Some((g, c));
        self.bracket[b][a] = Some((g, -c));
    }

    /// `[f_a, f_b] = ([f_i, [f_b', f_b]] - [f_b', [f_i, f_b]]) / d` for `f_a = [f_i, f_b'] / d`.
    fn fill_brackets(&mut self) -> Result<()> {
        let r = self.roots.len();
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&a| self.roots[a].height());
        for &a in &order {
            let Some((i, b0, d)) = self.definition[a] else {
                continue;
            };
            let fi = self.simple[i];
            for b in 0..r {
                let sum_root = self.roots[a].add(&self.roots[b]);
                let Some(&g) = self.index.get(&sum_root) else {
                    self.bracket[a][b] = None;
                    continue;
                };
                let mut c = 0;
                if let Some((r1, c1)) = self.bracket[b0][b] {
                    if let Some((_, c2)) = self.bracket[fi][r1] {
                        c += c1 * c2;
                    }
                }
                if let Some((r1, c1)) = self.bracket[fi][b] {
                    if let Some((_, c2)) = self.bracket[b0][r1] {
                        c -= c1 * c2;
                    }
                }
                if c % d != 0 {
                    return Err(Error::InternalMismatch(format!(
                        "non-integral bracket of roots {a} and {b}"
                    )));
                }
                let c = c / d;
                let entry = (c != 0).then_some((g, c));
                if let Some(prev) = self.bracket[a][b] {
                    if Some(prev) != entry {
                        return Err(Error::InternalMismatch(format!(
                            "inconsistent bracket of roots {a} and {b}"
                        )));
                    }
                }
                self.bracket[a][b] = entry;
            }
        }
        Ok(())
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, a: usize) -> &DepthVector {
        &self.roots[a]
    }

    pub fn roots(&self) -> &[DepthVector] {
        &self.roots
    }

    pub fn root_index(&self, d: &DepthVector) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    /// The node `i` if `a` is the simple root `alpha_i`.
    pub fn simple_node(&self, a: usize) -> Option<usize> {
        self.simple.iter().position(|&s| s == a)
    }

    /// `[e_i, f_a]`.
    pub fn raise(&self, i: usize, a: usize) -> Raise {
        self.raise[i][a]
    }

    /// `[f_a, f_b] = N f_g` as `Some((g, N))`, or `None` when it vanishes.
    pub fn f_bracket(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        self.bracket[a][b]
    }

    /// `f_a = [f_i, f_b] / d` as `(i, b, d)`; `None` for simple roots.
    pub fn definition(&self, a: usize) -> Option<(usize, usize, i64)> {
        self.definition[a]
    }

    /// Largest `p` with `beta - p alpha` a root (positive or negative), for positive roots.
    pub fn string_length_below(&self, alpha: usize, beta: usize) -> u32 {
        let (a, b) = (&self.roots[alpha], &self.roots[beta]);
        let mut p = 0;
        loop {
            let k = p as i64 + 1;
            let v: Vec<i64> = (0..self.rank())
                .map(|i| b.get(i) as i64 - k * a.get(i) as i64)
                .collect();
            let is_root = |w: &[i64]| {
                w.iter().all(|&x| x >= 0)
                    && self
                        .index
                        .contains_key(&DepthVector(w.iter().map(|&x| x as u32).collect()))
            };
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            if !(is_root(&v) || is_root(&neg)) {
                break;
            }
            p += 1;
        }
        p
    }
}

/// `Some(c)` with `raw = c * target` (`target` nonzero), `None` if not proportional.
fn proportionality(raw: &[i64], target: &[i64]) -> Option<i64> {
    let k = target.iter().position(|&t| t != 0)?;
    if raw[k] % target[k] != 0 {
        return None;
    }
    let c = raw[k] / target[k];
    raw.iter()
        .zip(target)
        .all(|(&x, &t)| x == c * t)
        .then_some(c)
}
