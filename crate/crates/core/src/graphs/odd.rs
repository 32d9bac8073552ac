use std::collections::HashMap;

use num_bigint::BigUint;

use super::Graph;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Largest odd graph built outright.
pub const MAX_ODD_GRAPH_VERTICES: usize = 1_000_000;

/// `O_m` with its `m`-subset labels.
#[derive(Clone, Debug)]
pub struct OddGraph {
    pub m: usize,
    pub graph: Graph,
    /// Vertex `v` is the subset whose bit mask is `masks[v]`.
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for x in start..=(n - (k - current.len())) {
            current.push(x);
            rec(x + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// The odd graph `O_m`: `m`-subsets of `{0, .., 2m}` in lexicographic
/// order, adjacent when disjoint.
pub fn odd_graph(m: usize) -> Result<OddGraph> {
    if m == 0 {
        return Err(Error::InvalidArgument("odd graph needs m >= 1".into()));
    }
    let n = 2 * m + 1;
    if n > 63 || binomial(n as u64, m as u64) > BigUint::from(MAX_ODD_GRAPH_VERTICES) {
        return Err(Error::Undecided(format!(
            "O_{m} exceeds {MAX_ODD_GRAPH_VERTICES} vertices"
        )));
    }
    let labels = subsets(n, m);
    let masks: Vec<u64> = labels
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &x| acc | 1 << x))
        .collect();
    let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let full = (1u64 << n) - 1;
    let adjacency = masks
        .iter()
        .map(|&b| {
            let rest = full & !b;
            // neighbours: m-subsets of the (m+1)-set complement, one point dropped
            (0..n)
                .filter(|x| rest >> x & 1 == 1)
                .map(|x| index[&(rest & !(1 << x))])
                .collect()
        })
        .collect();
    let graph = Graph::from_adjacency(adjacency)?.with_labels(labels);
    Ok(OddGraph {
        m,
        graph,
        masks,
        index,
    })
}

impl OddGraph {
    pub fn point_degree(&self) -> usize {
        2 * self.m + 1
    }

    /// Vertex permutation induced by a permutation of the `2m+1` points.
    pub fn vertex_permutation(&self, p: &Permutation) -> Result<Permutation> {
        if p.degree() != self.point_degree() {
            return Err(Error::DegreeMismatch {
                expected: self.point_degree(),
                found: p.degree(),
            });
        }
        let images = self
            .masks
            .iter()
            .map(|&b| {
                let mut image = 0u64;
                for x in 0..self.point_degree() {
                    if b >> x & 1 == 1 {
                        image |= 1 << p.apply(x);
                    }
                }
                self.index[&image] as u32
            })
            .collect();
        Permutation::from_images(images)
    }

    /// The action on vertices induced by a group on the `2m+1` points. The
    /// action is faithful, so the order is known in advance.
    pub fn induced_action(&self, group: &PermGroup) -> Result<PermGroup> {
        let gens = group
            .generators()
            .iter()
            .map(|g| self.vertex_permutation(g))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::with_known_order(self.graph.vertex_count(), gens, group.order())
    }

    /// `S_{2m+1}` on vertices, generated by the images of `(0 1)` and `(0 1 .. 2m)`.
    pub fn symmetric_action(&self) -> Result<PermGroup> {
        let n = self.point_degree();
        let gens = vec![
            Permutation::from_cycles(n, &[vec![0, 1]])?,
            Permutation::from_cycles(n, &[(0..n).collect()])?,
        ];
        let group = PermGroup::new(n, gens)?;
        self.induced_action(&group)
    }
}
