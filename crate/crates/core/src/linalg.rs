//! Exact row reduction over the rationals.

use crate::rational::Rat;

/// A subspace of `Q^dim` kept as a fully reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(dim: usize) -> RowSpace {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The whole space, with the standard basis.
    pub fn full(dim: usize) -> RowSpace {
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rat::ONE } else { Rat::ZERO })
                    .collect()
            })
            .collect();
        RowSpace {
            dim,
            rows,
            pivots: (0..dim).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Replaces `v` by its canonical representative modulo the subspace.
    pub fn reduce(&self, v: &mut [Rat]) {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                for (x, &r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= c * r;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if self.is_full() {
            return true;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Rat::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= inv;
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                for (x, &r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x -= c * r;
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Rank of the matrix with the given rows.
pub fn rank<I: IntoIterator<Item = Vec<Rat>>>(dim: usize, rows: I) -> usize {
    let mut s = RowSpace::new(dim);
    for r in rows {
        s.insert(r);
    }
    s.rank()
}
