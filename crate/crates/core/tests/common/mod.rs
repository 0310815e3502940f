#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use kmweights::engine::{Engine, ModulePresentation, Pbw, QuotientModule, UElement};
use kmweights::linalg::RowSpace;
use kmweights::{DepthVector, Error, Gcm, HighestWeight, NodeSet, Rat};
use rand::seq::SliceRandom;
use rand::Rng;

pub struct Sample {
    pub label: String,
    pub gcm: Gcm,
    pub engine: Engine,
    pub module: QuotientModule,
}

/// One engine per algebra label, shared between samples.
#[derive(Default)]
pub struct Engines(HashMap<String, Engine>);

impl Engines {
    pub fn get(&mut self, label: &str) -> (Gcm, Engine) {
        let gcm = Gcm::from_type(label).unwrap();
        let e = self
            .0
            .entry(label.to_string())
            .or_insert_with(|| Engine::new(&gcm).unwrap())
            .clone();
        (gcm, e)
    }
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_height: u32) -> Vec<(usize, u32)> {
    let total = rng.gen_range(1..=max_height);
    let mut left = total;
    let mut w = Vec::new();
    while left > 0 {
        let k = rng.gen_range(1..=left);
        w.push((rng.gen_range(0..n), k));
        left -= k;
    }
    w
}

/// Random quotients of Verma modules; samples whose relations kill `v_lambda` are redrawn.
pub fn random_corpus<R: Rng>(
    rng: &mut R,
    engines: &mut Engines,
    labels: &[&str],
    pairings: &[Rat],
    max_relations: usize,
    max_relation_height: u32,
    h: u32,
    count: usize,
) -> Vec<Sample> {
    let mut out = Vec::new();
    while out.len() < count {
        let label = *labels.choose(rng).unwrap();
        let (gcm, engine) = engines.get(label);
        let n = gcm.rank();
        let lambda = HighestWeight::new((0..n).map(|_| *pairings.choose(rng).unwrap()).collect());
        let k = rng.gen_range(0..=max_relations);
        let rels = (0..k)
            .map(|_| ModulePresentation::word(&random_word(rng, n, max_relation_height)))
            .collect();
        match QuotientModule::new(&engine, &ModulePresentation::new(lambda, rels), h) {
            Ok(module) => out.push(Sample {
                label: label.to_string(),
                gcm,
                engine,
                module,
            }),
            Err(Error::ZeroModule) => continue,
            Err(e) => panic!("unexpected engine error: {e}"),
        }
    }
    out
}

pub fn rats(v: &[&str]) -> Vec<Rat> {
    v.iter().map(|s| s.parse().unwrap()).collect()
}

fn monomial_power(pbw: &Pbw, i: usize, k: u32) -> UElement {
    let r = pbw.algebra().simple(i) as u16;
    let mut x: UElement = vec![(vec![], 1)];
    for _ in 0..k {
        x = pbw.left_mult(r, &x);
    }
    x
}

fn add_scaled(acc: &mut BTreeMap<Vec<u16>, i64>, x: &UElement, c: i64) {
    for (m, k) in x {
        *acc.entry(m.clone()).or_insert(0) += c * k;
    }
}

fn collect(acc: BTreeMap<Vec<u16>, i64>) -> UElement {
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

fn ad(pbw: &Pbw, i: usize, x: &UElement) -> UElement {
    let f = monomial_power(pbw, i, 1);
    let mut acc = BTreeMap::new();
    add_scaled(&mut acc, &pbw.product(&f, x), 1);
    add_scaled(&mut acc, &pbw.product(x, &f), -1);
    collect(acc)
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

/// Random independent set `J` (not containing `i`) of neighbours of a node `i`,
/// with exponents `b_j <= 3` and a power `N <= 3`.
pub fn serre_instance<R: Rng>(rng: &mut R, gcm: &Gcm) -> Option<(usize, Vec<(usize, u32)>, u32)> {
    let n = gcm.rank();
    let i = rng.gen_range(0..n);
    let nb: Vec<usize> = gcm.neighbours(i).iter().collect();
    let mut j: Vec<usize> = Vec::new();
    for &k in &nb {
        if rng.gen_bool(0.7) && j.iter().all(|&m| !gcm.adjacent(m, k)) {
            j.push(k);
        }
    }
    if j.is_empty() {
        return None;
    }
    let bs = j.into_iter().map(|k| (k, rng.gen_range(0..=3))).collect();
    Some((i, bs, rng.gen_range(1..=3)))
}

/// `(f_n^{b_n} ... f_1^{b_1}) f_i^N` against the binomial expansion in iterated `ad`.
pub fn eserre2_holds(pbw: &Pbw, i: usize, bs: &[(usize, u32)], big_n: u32) -> bool {
    let fin = monomial_power(pbw, i, big_n);
    // the product is written with the last factor of `bs` leftmost
    let mut left: UElement = vec![(vec![], 1)];
    for &(j, b) in bs {
        left = pbw.product(&monomial_power(pbw, j, b), &left);
    }
    let lhs = pbw.product(&left, &fin);

    let mut acc = BTreeMap::new();
    let mut ts = vec![0u32; bs.len()];
    loop {
        let mut coeff = 1i64;
        let mut inner = fin.clone();
        for (k, &(j, b)) in bs.iter().enumerate() {
            coeff *= binomial(b, ts[k]);
            for _ in 0..ts[k] {
                inner = ad(pbw, j, &inner);
            }
        }
        let mut tail: UElement = vec![(vec![], 1)];
        for (k, &(j, b)) in bs.iter().enumerate() {
            tail = pbw.product(&monomial_power(pbw, j, b - ts[k]), &tail);
        }
        add_scaled(&mut acc, &pbw.product(&inner, &tail), coeff);
        // next multi-index
        let mut k = 0;
        while k < bs.len() && ts[k] == bs[k].1 {
            ts[k] = 0;
            k += 1;
        }
        if k == bs.len() {
            break;
        }
        ts[k] += 1;
    }
    lhs == collect(acc)
}

fn coords(pbw: &Pbw, x: &UElement, depth: &DepthVector) -> Vec<Rat> {
    let basis = pbw.basis(depth);
    let mut v = vec![Rat::ZERO; basis.dim()];
    for (m, c) in x {
        v[basis.index[m]] += Rat::from(*c);
    }
    v
}

/// With `c_j > -N <alpha_i, alpha_j^vee>` the element `(prod f_j^{c_j}) f_i^N` lies in the
/// left ideal generated by `prod f_j^{c_j + N <alpha_i, alpha_j^vee>}`.
pub fn serre_containment_holds(
    pbw: &Pbw,
    gcm: &Gcm,
    i: usize,
    cs: &[(usize, u32)],
    big_n: u32,
) -> bool {
    let n = gcm.rank();
    let mut x: UElement = vec![(vec![], 1)];
    let mut y: UElement = vec![(vec![], 1)];
    let mut ydepth = DepthVector::zero(n);
    for &(j, c) in cs {
        let a = gcm.entry(j, i);
        assert!(c as i64 > -(big_n as i64) * a);
        let e = (c as i64 + big_n as i64 * a) as u32;
        x = pbw.product(&monomial_power(pbw, j, c), &x);
        y = pbw.product(&monomial_power(pbw, j, e), &y);
        ydepth = ydepth.plus_unit(j, e);
    }
    x = pbw.product(&x, &monomial_power(pbw, i, big_n));
    let mut xdepth = DepthVector::zero(n).plus_unit(i, big_n);
    for &(j, c) in cs {
        xdepth = xdepth.plus_unit(j, c);
    }
    let quot = xdepth
        .checked_sub(&ydepth)
        .expect("generator lies above the element");
    let mut ideal = RowSpace::new(pbw.basis(&xdepth).dim());
    for m in pbw.basis(&quot).monomials.iter() {
        ideal.insert(coords(pbw, &pbw.product(&[(m.clone(), 1)], &y), &xdepth));
    }
    ideal.contains(&coords(pbw, &x, &xdepth))
}

pub fn ns(v: &[usize]) -> NodeSet {
    v.iter().copied().collect()
}

pub fn dv(v: &[u32]) -> DepthVector {
    DepthVector(v.to_vec())
}
