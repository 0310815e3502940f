//! Parsing of command-line descriptors.

use std::collections::BTreeMap;
use std::path::Path;

use kmweights::engine::{ModulePresentation, Relation};
use kmweights::{AlgebraDescriptor, DepthVector, Error, Gcm, HighestWeight, NodeSet, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// A type label (`A2`, `A1xA1`, `A1~`), inline JSON, or a path to a JSON file.
pub fn algebra(s: &str) -> Result<Gcm> {
    let t = s.trim();
    if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') {
        return algebra_json(t);
    }
    if Path::new(t).is_file() {
        let text = std::fs::read_to_string(t).map_err(|e| parse_err(format!("{t}: {e}")))?;
        return algebra_json(&text);
    }
    Gcm::from_type(t)
}

fn algebra_json(text: &str) -> Result<Gcm> {
    if let Ok(m) = serde_json::from_str::<Vec<Vec<i64>>>(text) {
        return Gcm::new(m);
    }
    let d: AlgebraDescriptor =
        serde_json::from_str(text).map_err(|e| parse_err(format!("algebra descriptor: {e}")))?;
    d.build()
}

/// Comma separated node indices; brackets and an empty string are allowed.
pub fn nodes(s: &str, n: usize) -> Result<NodeSet> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let mut out = NodeSet::EMPTY;
    for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| parse_err(format!("bad node index {part:?}")))?;
        if i >= n {
            return Err(Error::NodeOutOfRange { node: i, rank: n });
        }
        out.insert(i);
    }
    Ok(out)
}

pub fn lambda(s: &str, gcm: &Gcm) -> Result<HighestWeight> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let l = HighestWeight::parse(t)?;
    l.check_rank(gcm)?;
    Ok(l)
}

/// `[a,b,...]` or `a,b,...`.
pub fn depth(s: &str, n: usize) -> Result<DepthVector> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let v = t
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| parse_err(format!("bad depth entry {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: v.len(),
        });
    }
    Ok(DepthVector(v))
}

/// A JSON list of relations; each is a word `[[node, exponent], ...]` read left to right.
pub fn relations(s: Option<&str>, n: usize) -> Result<Vec<Relation>> {
    let Some(s) = s else { return Ok(Vec::new()) };
    let rels: Vec<Relation> =
        serde_json::from_str(s).map_err(|e| parse_err(format!("relations: {e}")))?;
    for r in &rels {
        if let Relation::Word(w) = r {
            if let Some(&(i, _)) = w.iter().find(|(i, _)| *i >= n) {
                return Err(Error::NodeOutOfRange { node: i, rank: n });
            }
        }
    }
    Ok(rels)
}

pub fn presentation(lambda: HighestWeight, rels: Vec<Relation>) -> ModulePresentation {
    ModulePresentation::new(lambda, rels)
}

/// Exponents either as `node:c` pairs or positionally over `free` in increasing order.
pub fn exponents(s: &str, free: NodeSet, n: usize) -> Result<BTreeMap<usize, u32>> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = t
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect();
    let num = |p: &str| {
        p.trim()
            .parse::<u32>()
            .map_err(|_| parse_err(format!("bad exponent {p:?}")))
    };
    if parts.iter().any(|p| p.contains(':')) {
        let mut out = BTreeMap::new();
        for p in parts {
            let (i, c) = p
                .split_once(':')
                .ok_or_else(|| parse_err(format!("expected node:c, got {p:?}")))?;
            let i: usize = i
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad node index {i:?}")))?;
            if i >= n {
                return Err(Error::NodeOutOfRange { node: i, rank: n });
            }
            out.insert(i, num(c)?);
        }
        return Ok(out);
    }
    if parts.len() != free.len() {
        return Err(parse_err(format!(
            "{} exponents for {} free nodes",
            parts.len(),
            free.len()
        )));
    }
    free.iter()
        .zip(parts)
        .map(|(i, p)| Ok((i, num(p)?)))
        .collect()
}
