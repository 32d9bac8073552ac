//! Right coset spaces `H\G` with canonical representatives.

use std::collections::HashMap;

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Canonical element of the right coset `H x`: the element `h x` whose images
/// of `H`'s base points are lexicographically smallest, found by greedy
/// descent through `H`'s chain.
pub fn canonical_coset_element(subgroup: &PermGroup, x: &Permutation) -> Permutation {
    let mut y = x.clone();
    for level in &subgroup.chain().levels {
        let best = level
            .orbit
            .iter()
            .copied()
            .min_by_key(|&d| y.apply(d))
            .expect("orbit is nonempty");
        y = level.representative(best).unwrap() * &y;
    }
    y
}

/// Right cosets of `subgroup` in `group`, numbered in breadth-first
/// discovery order from `H` itself, using the generators of `group` in order.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    /// Canonical representative of each coset; `reps[0]` is the identity.
    pub reps: Vec<Permutation>,
    /// Action of each generator of `group` on coset indices.
    pub generator_action: Vec<Permutation>,
    index: HashMap<Vec<u32>, usize>,
}

impl CosetSpace {
    pub fn enumerate(group: &PermGroup, subgroup: &PermGroup, max_index: u64) -> Result<Self> {
        if subgroup.degree() != group.degree() {
            return Err(Error::DegreeMismatch {
                expected: group.degree(),
                found: subgroup.degree(),
            });
        }
        let expected = group.order() / subgroup.order();
        if expected > max_index.into() {
            return Err(Error::Undecided(format!(
                "coset space of size {expected} exceeds the index cap {max_index}"
            )));
        }
        let identity = group.identity();
        let mut reps = vec![canonical_coset_element(subgroup, &identity)];
        let mut index = HashMap::new();
        index.insert(reps[0].images().to_vec(), 0usize);
        let gens = group.generators();
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut i = 0;
        while i < reps.len() {
            for (k, g) in gens.iter().enumerate() {
                let c = canonical_coset_element(subgroup, &(&reps[i] * g));
                let next = reps.len();
                let j = *index.entry(c.images().to_vec()).or_insert(next);
                if j == next {
                    reps.push(c);
                    if reps.len() as u64 > max_index {
                        return Err(Error::Undecided(format!(
                            "coset enumeration exceeded the index cap {max_index}"
                        )));
                    }
                }
                images[k].push(j as u32);
            }
            i += 1;
        }
        let generator_action = images
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>>>()?;
        Ok(CosetSpace {
            reps,
            generator_action,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the coset `H x`.
    pub fn coset_of(&self, subgroup: &PermGroup, x: &Permutation) -> usize {
        let c = canonical_coset_element(subgroup, x);
        self.index[c.images()]
    }

    /// Image of coset `i` under right multiplication by `g`.
    pub fn act(&self, subgroup: &PermGroup, i: usize, g: &Permutation) -> usize {
        self.coset_of(subgroup, &(&self.reps[i] * g))
    }

    /// Induced permutation of the coset indices for an arbitrary element `g`.
    pub fn permutation_of(&self, subgroup: &PermGroup, g: &Permutation) -> Permutation {
        let images = (0..self.len())
            .map(|i| self.act(subgroup, i, g) as u32)
            .collect();
        Permutation::from_images(images).expect("right multiplication permutes cosets")
    }
}
