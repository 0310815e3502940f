//! Weight-sets of maximal `J`-integrable highest-weight modules by string closure.

use std::collections::{BTreeMap, BTreeSet};

use crate::cartan::{Gcm, NodeSet};
use crate::error::Result;
use crate::weights::{pairing, require_integrable, DepthVector, HighestWeight, TruncatedWeightSet};

/// The closed set together with, for every member other than the top, the
/// member and node whose descending string produced it.
#[derive(Clone, Debug)]
pub struct IntegrableClosure {
    pub weights: TruncatedWeightSet,
    pub certificate: BTreeMap<DepthVector, (DepthVector, usize)>,
}

/// Starting from `lambda`, descend every full simple string `mu, mu - alpha_j, ...,
/// mu - k alpha_j` with `k = <mu, alpha_j^vee> > 0`, `j` in `J`, until nothing new appears.
pub fn integrable_closure(
    gcm: &Gcm,
    lambda: &HighestWeight,
    j: NodeSet,
    h: u32,
) -> Result<IntegrableClosure> {
    lambda.check_rank(gcm)?;
    j.check_range(gcm.rank())?;
    require_integrable(lambda, j)?;
    let n = gcm.rank();
    let mut weights = TruncatedWeightSet::top(lambda.clone(), h);
    let mut certificate = BTreeMap::new();
    // strings only go down, so processing in canonical (height) order visits each member once
    let mut pending: BTreeSet<DepthVector> = [DepthVector::zero(n)].into();
    while let Some(mu) = pending.pop_first() {
        for i in j.iter() {
            // integral because lambda_i is an integer and mu is integral
            let k = pairing(gcm, lambda, &mu, i)
                .as_int()
                .expect("integral pairing on J");
            for t in 1..=k.max(0) as u32 {
                if mu.height() + t > h {
                    break;
                }
                let nu = mu.plus_unit(i, t);
                if weights.insert(nu.clone()) {
                    certificate.insert(nu.clone(), (mu.clone(), i));
                    pending.insert(nu);
                }
            }
        }
    }
    Ok(IntegrableClosure {
        weights,
        certificate,
    })
}

pub fn integrable_weights(
    gcm: &Gcm,
    lambda: &HighestWeight,
    j: NodeSet,
    h: u32,
) -> Result<TruncatedWeightSet> {
    Ok(integrable_closure(gcm, lambda, j, h)?.weights)
}

/// First violation of `W_J`-stability: a member `mu` and `j` in `J` such that some
/// weight on the segment between `mu` and `s_j mu` is missing (within truncation).
pub fn wj_stability_violation(
    gcm: &Gcm,
    set: &TruncatedWeightSet,
    j: NodeSet,
) -> Option<(DepthVector, usize)> {
    for mu in set.iter() {
        for i in j.iter() {
            let Some(k) = pairing(gcm, &set.lambda, mu, i).as_int() else {
                continue;
            };
            let ok = if k >= 0 {
                (1..=k as u32)
                    .take_while(|&t| mu.height() + t <= set.height)
                    .all(|t| set.contains(&mu.plus_unit(i, t)))
            } else {
                (1..=(-k) as u32).all(|t| mu.minus_unit(i, t).is_some_and(|nu| set.contains(&nu)))
            };
            if !ok {
                return Some((mu.clone(), i));
            }
        }
    }
    None
}
