//! Generalized Cartan matrices, Dynkin graphs and node subsets.
//!
//! Convention used everywhere: `a[i][j] = <alpha_j, alpha_i^vee>`, so row `i`
//! is indexed by the simple coroot.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A subset of the node set, stored as a bitmask (at most 64 nodes).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_bits(bits: u64) -> NodeSet {
        NodeSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All nodes `0..n`.
    pub fn full(n: usize) -> NodeSet {
        if n >= 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> NodeSet {
        NodeSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn with(self, i: usize) -> NodeSet {
        NodeSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> NodeSet {
        NodeSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: NodeSet) -> NodeSet {
        NodeSet(self.0 | o.0)
    }

    pub fn intersection(self, o: NodeSet) -> NodeSet {
        NodeSet(self.0 & o.0)
    }

    pub fn difference(self, o: NodeSet) -> NodeSet {
        NodeSet(self.0 & !o.0)
    }

    /// Complement inside `0..n`.
    pub fn complement(self, n: usize) -> NodeSet {
        NodeSet::full(n).difference(self)
    }

    pub fn is_subset(self, o: NodeSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_proper_subset(self, o: NodeSet) -> bool {
        self.is_subset(o) && self != o
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Every subset of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(NodeSet(cur))
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Fails with `NodeOutOfRange` unless all members are below `n`.
    pub fn check_range(self, n: usize) -> Result<(), Error> {
        match self.iter().find(|&i| i >= n) {
            Some(node) => Err(Error::NodeOutOfRange { node, rank: n }),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> NodeSet {
        let mut s = NodeSet::EMPTY;
        for i in iter {
            assert!(i < 64, "node index {i} exceeds 63");
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for NodeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<NodeSet, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&i| i >= 64) {
            return Err(serde::de::Error::custom(format!(
                "node index {bad} exceeds 63"
            )));
        }
        Ok(v.into_iter().collect())
    }
}

/// A validated generalized Cartan matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Gcm {
    a: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Gcm {
    /// Validates the three GCM axioms, reporting the first violating entry.
    pub fn new(a: Vec<Vec<i64>>) -> Result<Gcm, Error> {
        let n = a.len();
        if n == 0 {
            return Err(Error::Parse("empty Cartan matrix".into()));
        }
        if n > 64 {
            return Err(Error::Parse(format!("rank {n} exceeds 64 nodes")));
        }
        if let Some(row) = a.iter().position(|r| r.len() != n) {
            return Err(Error::Parse(format!(
                "Cartan matrix is not square (row {row})"
            )));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::DiagonalNotTwo { i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && a[i][j] > 0 {
                    return Err(Error::PositiveOffDiagonal { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && (a[i][j] == 0) != (a[j][i] == 0) {
                    // report the entry that is zero while its mirror is not
                    let (i, j) = if a[i][j] == 0 { (i, j) } else { (j, i) };
                    return Err(Error::AsymmetricZero { i, j });
                }
            }
        }
        Ok(Gcm { a, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Gcm, Error> {
        if labels.len() != self.rank() {
            return Err(Error::Parse("label count differs from rank".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Expands a type label such as `A3`, `B2`, `G2`, `A1~` or `A1xA2`.
    pub fn from_type(label: &str) -> Result<Gcm, Error> {
        let parts: Vec<&str> = label.split(['x', 'X']).map(str::trim).collect();
        let mut blocks = Vec::new();
        for p in parts {
            blocks.push(
                type_block(p)
                    .ok_or_else(|| Error::Parse(format!("unknown algebra type {label:?}")))?,
            );
        }
        Gcm::new(block_diagonal(&blocks))
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.rank())
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.a[i][j] != 0
    }

    pub fn neighbours(&self, i: usize) -> NodeSet {
        (0..self.rank()).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// True iff no two distinct members are joined by an edge.
    pub fn is_independent(&self, s: NodeSet) -> bool {
        s.iter()
            .all(|i| self.neighbours(i).intersection(s).is_empty())
    }

    /// Partition of `s` into connected components of the induced Dynkin subgraph,
    /// ordered by smallest member.
    pub fn connected_components(&self, s: NodeSet) -> Vec<NodeSet> {
        let mut left = s;
        let mut out = Vec::new();
        while let Some(start) = left.min() {
            let mut comp = NodeSet::singleton(start);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in self.neighbours(i).intersection(s).difference(comp).iter() {
                    comp.insert(j);
                    stack.push(j);
                }
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, s: NodeSet) -> bool {
        self.connected_components(s).len() <= 1
    }

    /// Independent subsets of `s`, by increasing size then bitmask.
    pub fn independent_subsets(&self, s: NodeSet) -> Vec<NodeSet> {
        let mut v: Vec<NodeSet> = s.subsets().filter(|&t| self.is_independent(t)).collect();
        v.sort_by_key(|t| (t.len(), t.bits()));
        v
    }
}

fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut a = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                a[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    a
}

fn path(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

fn type_block(label: &str) -> Option<Vec<Vec<i64>>> {
    if let Some(base) = label.strip_suffix('~') {
        // untwisted affine type A
        let n: usize = base.strip_prefix('A')?.parse().ok()?;
        return match n {
            0 => None,
            1 => Some(vec![vec![2, -2], vec![-2, 2]]),
            _ => {
                let mut a = path(n + 1);
                a[0][n] = -1;
                a[n][0] = -1;
                Some(a)
            }
        };
    }
    let (family, n) = label.split_at(1);
    let n: usize = n.parse().ok()?;
    match (family, n) {
        ("A", 1..) => Some(path(n)),
        ("B", 2..) => {
            let mut a = path(n);
            a[n - 1][n - 2] = -2;
            Some(a)
        }
        ("C", 2..) => {
            let mut a = path(n);
            a[n - 2][n - 1] = -2;
            Some(a)
        }
        ("D", 4..) => {
            let mut a = path(n);
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
            Some(a)
        }
        ("E", 6..=8) => {
            // chain 0-2-3-4-..., node 1 attached to node 3
            let mut a = vec![vec![0; n]; n];
            let edges = (2..n - 1).map(|i| (i, i + 1)).chain([(0, 2), (1, 3)]);
            for i in 0..n {
                a[i][i] = 2;
            }
            for (i, j) in edges {
                a[i][j] = -1;
                a[j][i] = -1;
            }
            Some(a)
        }
        ("F", 4) => {
            let mut a = path(4);
            a[2][1] = -2;
            Some(a)
        }
        ("G", 2) => Some(vec![vec![2, -1], vec![-3, 2]]),
        _ => None,
    }
}

/// JSON algebra descriptor: `{"type":"A2"}`, `{"cartan":[[2,-1],[-1,2]]}` or a bare label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraDescriptor {
    Type {
        #[serde(rename = "type")]
        label: String,
    },
    Cartan {
        cartan: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Label(String),
}

impl AlgebraDescriptor {
    pub fn build(&self) -> Result<Gcm, Error> {
        match self {
            AlgebraDescriptor::Type { label } | AlgebraDescriptor::Label(label) => {
                Gcm::from_type(label)
            }
            AlgebraDescriptor::Cartan { cartan, labels } => {
                let g = Gcm::new(cartan.clone())?;
                match labels {
                    Some(l) => g.with_labels(l.clone()),
                    None => Ok(g),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn build_gcm_examples() {
        assert!(Gcm::new(vec![vec![2, -1], vec![-1, 2]]).is_ok());
        assert!(Gcm::new(vec![vec![2, 0], vec![0, 2]]).is_ok());
        assert_eq!(
            Gcm::new(vec![vec![2, -1], vec![0, 2]]),
            Err(Error::AsymmetricZero { i: 1, j: 0 })
        );
        assert_eq!(
            Gcm::new(vec![vec![1, 0], vec![0, 2]]),
            Err(Error::DiagonalNotTwo { i: 0 })
        );
        assert_eq!(
            Gcm::new(vec![vec![2, 1], vec![-1, 2]]),
            Err(Error::PositiveOffDiagonal { i: 0, j: 1 })
        );
    }

    #[test]
    fn type_labels() {
        assert_eq!(
            Gcm::from_type("A2").unwrap().matrix(),
            &[vec![2, -1], vec![-1, 2]]
        );
        assert_eq!(
            Gcm::from_type("B2").unwrap().matrix(),
            &[vec![2, -1], vec![-2, 2]]
        );
        assert_eq!(
            Gcm::from_type("G2").unwrap().matrix(),
            &[vec![2, -1], vec![-3, 2]]
        );
        assert_eq!(
            Gcm::from_type("A1~").unwrap().matrix(),
            &[vec![2, -2], vec![-2, 2]]
        );
        assert_eq!(
            Gcm::from_type("A1xA1").unwrap().matrix(),
            &[vec![2, 0], vec![0, 2]]
        );
        assert_eq!(Gcm::from_type("A4").unwrap().rank(), 4);
        assert_eq!(Gcm::from_type("C3").unwrap().entry(1, 2), -2);
        assert_eq!(Gcm::from_type("D4").unwrap().neighbours(1), ns(&[0, 2, 3]));
        assert_eq!(Gcm::from_type("E6").unwrap().neighbours(3), ns(&[1, 2, 4]));
        assert!(Gcm::from_type("Q7").is_err());
        assert!(Gcm::from_type("B1").is_err());
    }

    #[test]
    fn independence_examples() {
        let a2 = Gcm::from_type("A2").unwrap();
        let a1a1 = Gcm::from_type("A1xA1").unwrap();
        let a3 = Gcm::from_type("A3").unwrap();
        assert!(!a2.is_independent(ns(&[0, 1])));
        assert!(a1a1.is_independent(ns(&[0, 1])));
        assert!(a3.is_independent(ns(&[0, 2])));
        assert!(a3.is_independent(NodeSet::EMPTY));
    }

    #[test]
    fn component_examples() {
        let a3 = Gcm::from_type("A3").unwrap();
        let a1a1 = Gcm::from_type("A1xA1").unwrap();
        assert_eq!(
            a3.connected_components(ns(&[0, 1, 2])),
            vec![ns(&[0, 1, 2])]
        );
        assert_eq!(
            a3.connected_components(ns(&[0, 2])),
            vec![ns(&[0]), ns(&[2])]
        );
        assert_eq!(
            a1a1.connected_components(ns(&[0, 1])),
            vec![ns(&[0]), ns(&[1])]
        );
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = ns(&[1, 3, 4]);
        let subs: Vec<NodeSet> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(NodeSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn descriptor_json() {
        let d: AlgebraDescriptor = serde_json::from_str(r#"{"type":"A2"}"#).unwrap();
        assert_eq!(d.build().unwrap(), Gcm::from_type("A2").unwrap());
        let d: AlgebraDescriptor = serde_json::from_str(r#"{"cartan":[[2,-1],[-1,2]]}"#).unwrap();
        assert_eq!(d.build().unwrap(), Gcm::from_type("A2").unwrap());
        let d: AlgebraDescriptor = serde_json::from_str(r#""B2""#).unwrap();
        assert_eq!(d.build().unwrap().entry(1, 0), -2);
    }

    #[test]
    fn nodeset_serde_is_sorted_list() {
        let s = ns(&[2, 0]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,2]");
        let t: NodeSet = serde_json::from_str("[2,0]").unwrap();
        assert_eq!(s, t);
    }
}
