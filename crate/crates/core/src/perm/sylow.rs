//! Sylow subgroups and p-cores of small groups by element enumeration.

use std::collections::HashSet;

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::two_adic::{is_prime, p_part};

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// A Sylow `p`-subgroup of a group with at most `limit` elements.
///
/// Grows a `p`-subgroup `P` by adjoining a `p`-element of `N(P) \ P` until
/// its order is the `p`-part of `|G|`; such an element exists while `P` is
/// not Sylow, so the loop always terminates.
pub fn sylow_subgroup(group: &PermGroup, p: u64, limit: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(group.order_u64(), p)?;
    let elements = group.elements(limit)?;
    let p_elements: Vec<&Permutation> = elements
        .iter()
        .filter(|g| !g.is_identity() && is_p_power(g.order(), p))
        .collect();
    let mut sylow = PermGroup::trivial(group.degree());
    while sylow.order_u64() < target {
        let next = p_elements
            .iter()
            .find(|g| !sylow.contains_unchecked(g) && sylow.is_normalized_by(std::slice::from_ref(g)))
            .expect("a p-subgroup that is not Sylow has a p-element in its normalizer");
        sylow = sylow.extend(next)?;
    }
    Ok(sylow)
}

/// Largest normal `p`-subgroup `O_p(G)`: the core of a Sylow `p`-subgroup.
pub fn p_core(group: &PermGroup, p: u64, limit: u64) -> Result<PermGroup> {
    let sylow = sylow_subgroup(group, p, limit)?;
    let mut core: HashSet<Permutation> = sylow.elements(limit)?.into_iter().collect();
    loop {
        let before = core.len();
        for g in group.generators() {
            let conjugated: HashSet<Permutation> = core.iter().map(|x| x.conjugate_by(g)).collect();
            core.retain(|x| conjugated.contains(x));
        }
        if core.len() == before {
            break;
        }
    }
    let mut result = PermGroup::trivial(group.degree());
    let mut members: Vec<Permutation> = core.into_iter().collect();
    members.sort();
    for x in &members {
        if !result.contains_unchecked(x) {
            result = result.extend(x)?;
        }
    }
    Ok(result)
}
