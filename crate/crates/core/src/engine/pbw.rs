//! PBW monomials in negative root vectors and straightening in `U(n^-)`.
//!
//! A monomial is a list of root indices in non-increasing order, read left to
//! right as a product; larger roots stand on the left.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::algebra::{ChevalleyBasis, Raise};
use crate::weights::DepthVector;

pub type Monomial = Vec<u16>;

/// A linear combination of PBW monomials with integer coefficients.
pub type UElement = Vec<(Monomial, i64)>;

/// Term of `e_i` applied to a monomial times `v_lambda`: coefficient `a + b * lambda_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaisedTerm {
    pub monomial: Monomial,
    pub constant: i64,
    pub lambda_coeff: i64,
}

/// The ordered PBW basis of one weight space of `U(n^-)`.
#[derive(Debug)]
pub struct DepthBasis {
    pub monomials: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

impl DepthBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

type MultCache = HashMap<(u16, Monomial), Arc<UElement>>;
type RaiseCache = HashMap<(usize, Monomial), Arc<Vec<RaisedTerm>>>;

/// Memoized straightening over a fixed Chevalley basis; caches are filled on demand
/// under read-write locks, so one instance can serve concurrent queries.
#[derive(Debug)]
pub struct Pbw {
    cb: ChevalleyBasis,
    bases: RwLock<HashMap<DepthVector, Arc<DepthBasis>>>,
    mult_cache: RwLock<MultCache>,
    raise_cache: RwLock<RaiseCache>,
}

fn checked(c: i64, k: i64) -> i64 {
    c.checked_mul(k).expect("exact arithmetic overflow")
}

fn accumulate(acc: &mut HashMap<Monomial, i64>, m: Monomial, c: i64) {
    let e = acc.entry(m).or_insert(0);
    *e = e.checked_add(c).expect("exact arithmetic overflow");
}

fn finish(acc: HashMap<Monomial, i64>) -> UElement {
    let mut v: UElement = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

impl Pbw {
    pub fn new(cb: ChevalleyBasis) -> Pbw {
        Pbw {
            cb,
            bases: RwLock::default(),
            mult_cache: RwLock::default(),
            raise_cache: RwLock::default(),
        }
    }

    pub fn algebra(&self) -> &ChevalleyBasis {
        &self.cb
    }

    /// Depth (sum of roots) of a monomial.
    pub fn depth_of(&self, m: &[u16]) -> DepthVector {
        let mut d = DepthVector::zero(self.cb.rank());
        for &r in m {
            d = d.add(self.cb.root(r as usize));
        }
        d
    }

    /// Monomials summing to `depth`, in descending lexicographic order of index lists.
    pub fn basis(&self, depth: &DepthVector) -> Arc<DepthBasis> {
        if let Some(b) = self.bases.read().unwrap().get(depth) {
            return b.clone();
        }
        let mut monomials = Vec::new();
        let mut cur = Vec::new();
        self.partitions(depth, self.cb.num_roots(), &mut cur, &mut monomials);
        monomials.sort_by(|a, b| b.cmp(a));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        let b = Arc::new(DepthBasis { monomials, index });
        self.bases
            .write()
            .unwrap()
            .entry(depth.clone())
            .or_insert(b)
            .clone()
    }

    fn partitions(
        &self,
        left: &DepthVector,
        below: usize,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if left.is_zero() {
            out.push(cur.clone());
            return;
        }
        for r in (0..below).rev() {
            if let Some(rest) = left.checked_sub(self.cb.root(r)) {
                cur.push(r as u16);
                self.partitions(&rest, r + 1, cur, out);
                cur.pop();
            }
        }
    }

    /// `f_r * m` rewritten in the PBW basis.
    pub fn mult(&self, r: u16, m: &[u16]) -> Arc<UElement> {
        if m.is_empty() || r >= m[0] {
            let mut w = Vec::with_capacity(m.len() + 1);
            w.push(r);
            w.extend_from_slice(m);
            return Arc::new(vec![(w, 1)]);
        }
        let key = (r, m.to_vec());
        if let Some(v) = self.mult_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        // f_r f_m0 rest = f_m0 (f_r rest) + [f_r, f_m0] rest
        let (m0, rest) = (m[0], &m[1..]);
        let mut acc = HashMap::new();
        for (mm, c) in self.mult(r, rest).iter() {
            for (t, k) in self.mult(m0, mm).iter() {
                accumulate(&mut acc, t.clone(), checked(*c, *k));
            }
        }
        if let Some((s, n)) = self.cb.f_bracket(r as usize, m0 as usize) {
            for (t, k) in self.mult(s as u16, rest).iter() {
                accumulate(&mut acc, t.clone(), checked(n, *k));
            }
        }
        let v = Arc::new(finish(acc));
        self.mult_cache
            .write()
            .unwrap()
            .entry(key)
            .or_insert(v)
            .clone()
    }

    /// `f_r * x`.
    pub fn left_mult(&self, r: u16, x: &[(Monomial, i64)]) -> UElement {
        let mut acc = HashMap::new();
        for (m, c) in x {
            for (t, k) in self.mult(r, m).iter() {
                accumulate(&mut acc, t.clone(), checked(*c, *k));
            }
        }
        finish(acc)
    }

    /// `f_{w_0} ... f_{w_k} * x`.
    pub fn left_mult_word(&self, word: &[u16], x: &[(Monomial, i64)]) -> UElement {
        let mut cur = x.to_vec();
        for &r in word.iter().rev() {
            cur = self.left_mult(r, &cur);
        }
        cur
    }

    /// Product `x * y` in `U(n^-)`.
    pub fn product(&self, x: &[(Monomial, i64)], y: &[(Monomial, i64)]) -> UElement {
        let mut acc = HashMap::new();
        for (m, c) in x {
            for (t, k) in self.left_mult_word(m, y) {
                accumulate(&mut acc, t, checked(*c, k));
            }
        }
        finish(acc)
    }

    /// `e_i * m * v_lambda`, with coefficients affine in `lambda_i`.
    pub fn raise(&self, i: usize, m: &[u16]) -> Arc<Vec<RaisedTerm>> {
        let key = (i, m.to_vec());
        if let Some(v) = self.raise_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let n = self.cb.rank();
        let gcm = self.cb.gcm();
        let mut acc: HashMap<Monomial, (i64, i64)> = HashMap::new();
        let mut suffix_depth = DepthVector::zero(n);
        // walk from the right so the depth of the suffix is at hand
        for pos in (0..m.len()).rev() {
            let prefix = &m[..pos];
            let suffix = &m[pos + 1..];
            match self.cb.raise(i, m[pos] as usize) {
                Raise::Zero => {}
                Raise::Coroot => {
                    // h_i acts on the suffix by lambda_i - <suffix depth, alpha_i^vee>
                    let shift: i64 = (0..n)
                        .map(|k| gcm.entry(i, k) * suffix_depth.get(k) as i64)
                        .sum();
                    let mut w = prefix.to_vec();
                    w.extend_from_slice(suffix);
                    let e = acc.entry(w).or_insert((0, 0));
                    e.0 -= shift;
                    e.1 += 1;
                }
                Raise::Root { root, coeff } => {
                    let tail = self.mult(root as u16, suffix);
                    for (t, k) in self.left_mult_word(prefix, &tail) {
                        acc.entry(t).or_insert((0, 0)).0 += checked(coeff, k);
                    }
                }
            }
            suffix_depth = suffix_depth.add(self.cb.root(m[pos] as usize));
        }
        let mut terms: Vec<RaisedTerm> = acc
            .into_iter()
            .filter(|(_, (a, b))| *a != 0 || *b != 0)
            .map(|(monomial, (constant, lambda_coeff))| RaisedTerm {
                monomial,
                constant,
                lambda_coeff,
            })
            .collect();
        terms.sort_by(|x, y| x.monomial.cmp(&y.monomial));
        let v = Arc::new(terms);
        self.raise_cache
            .write()
            .unwrap()
            .entry(key)
            .or_insert(v)
            .clone()
    }
}
