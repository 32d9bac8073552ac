//! Block systems of transitive groups.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// A nontrivial invariant partition, blocks sorted and ordered by smallest point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges and keeps the smaller root; returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Finest invariant partition in which all of `seed` lie in one block.
fn minimal_block_partition(gens: &[Permutation], degree: usize, seed: &[usize]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for w in seed.windows(2) {
        if uf.union(w[0], w[1]) {
            queue.push((w[0], w[1]));
        }
    }
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (u, v) = (g.apply(x), g.apply(y));
            if uf.union(u, v) {
                queue.push((u, v));
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); degree];
    for x in 0..degree {
        let r = uf.find(x);
        classes[r].push(x);
    }
    classes.retain(|c| !c.is_empty());
    classes
}

/// A minimal nontrivial block system, or `None` if the group is primitive.
///
/// Candidates are the minimal systems with `0` and `x` in one block, for each
/// seed `x`; the smallest block size wins, ties broken by the smallest seed.
pub fn minimal_block_system(group: &PermGroup) -> Result<Option<BlockSystem>> {
    if !group.is_transitive() {
        return Err(Error::Intransitive);
    }
    let n = group.degree();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for x in 1..n {
        let partition = minimal_block_partition(group.generators(), n, &[0, x]);
        if partition.len() == 1 {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => partition[0].len() < b[0].len(),
        };
        if better {
            best = Some(partition);
        }
    }
    Ok(best.map(|blocks| BlockSystem { blocks }))
}

/// Every nontrivial block system, ordered by block size then lexicographically.
pub fn all_block_systems(group: &PermGroup) -> Result<Vec<BlockSystem>> {
    if !group.is_transitive() {
        return Err(Error::Intransitive);
    }
    let n = group.degree();
    let gens = group.generators();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut systems: BTreeSet<(usize, Vec<Vec<usize>>)> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(block) = frontier.pop() {
        for x in 0..n {
            if block.contains(&x) {
                continue;
            }
            let mut seed = block.clone();
            seed.push(x);
            let partition = minimal_block_partition(gens, n, &seed);
            let b0 = partition[0].clone();
            if b0.len() == n || !found.insert(b0.clone()) {
                continue;
            }
            systems.insert((b0.len(), partition));
            frontier.push(b0);
        }
    }
    Ok(systems
        .into_iter()
        .map(|(_, blocks)| BlockSystem { blocks })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::named::symmetric;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            n,
            gens.iter()
                .map(|s| Permutation::parse_cycles(n, s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn is_invariant(g: &PermGroup, blocks: &[Vec<usize>]) -> bool {
        let set: BTreeSet<Vec<usize>> = blocks.iter().cloned().collect();
        g.generators().iter().all(|p| {
            blocks.iter().all(|b| {
                let mut img: Vec<usize> = b.iter().map(|&x| p.apply(x)).collect();
                img.sort_unstable();
                set.contains(&img)
            })
        })
    }

    #[test]
    fn cyclic_group_of_degree_six() {
        let g = group(6, &["(0 1 2 3 4 5)"]);
        let sys = minimal_block_system(&g).unwrap().unwrap();
        assert_eq!(sys.blocks, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(is_invariant(&g, &sys.blocks));
        let all = all_block_systems(&g).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].blocks, vec![vec![0, 2, 4], vec![1, 3, 5]]);
    }

    #[test]
    fn symmetric_group_is_primitive() {
        assert_eq!(minimal_block_system(&symmetric(5)).unwrap(), None);
        assert!(all_block_systems(&symmetric(5)).unwrap().is_empty());
    }

    #[test]
    fn wreath_product_blocks() {
        let g = group(6, &["(0 1)", "(0 2)(1 3)", "(0 2 4)(1 3 5)"]);
        let sys = minimal_block_system(&g).unwrap().unwrap();
        assert_eq!(sys.block_size(), 2);
        assert!(is_invariant(&g, &sys.blocks));
    }

    #[test]
    fn intransitive_rejected() {
        let g = group(4, &["(0 1)"]);
        assert_eq!(minimal_block_system(&g).unwrap_err(), Error::Intransitive);
    }
}
