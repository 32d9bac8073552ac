//! Finite simple undirected graphs, the odd and coset graph constructions,
//! and s-arc machinery.
//!
//! A group action on a graph is an ordinary [`PermGroup`] whose degree is
//! the vertex count.

mod arcs;
mod coset;
mod family;
mod local;
mod odd;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::PermGroup;

pub use arcs::{count_s_arcs, first_s_arc, is_s_arc_transitive};
pub use coset::{coset_graph, CosetGraph, CosetGraphSpec};
pub use family::{identify_family, Family};
pub use local::{
    arc_stabilizer_has_normal_p_subgroup, double_star_kernel, local_action, LocalAction,
    LocalActionReport,
};
pub use odd::{odd_graph, OddGraph, MAX_ODD_GRAPH_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<Vec<usize>>>,
}

/// JSON form: `{vertex_count, valency, edges, family}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertex_count: usize,
    pub valency: Option<usize>,
    pub edges: Vec<[usize; 2]>,
    pub family: String,
}

impl Graph {
    /// Validates symmetry, absence of loops and duplicate entries; sorts lists.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 {
            return Err(Error::InvalidArgument("graph must have a vertex".into()));
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("duplicate neighbour at vertex {u}")));
            }
            if let Some(&v) = list.iter().find(|&&v| v >= n) {
                return Err(Error::PointOutOfRange { point: v, degree: n });
            }
            if list.binary_search(&u).is_ok() {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
        }
        for u in 0..n {
            for &v in &adjacency[u] {
                if adjacency[v].binary_search(&u).is_err() {
                    return Err(Error::InvalidArgument(format!(
                        "edge {u}-{v} is not symmetric"
                    )));
                }
            }
        }
        Ok(Graph {
            adjacency,
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::PointOutOfRange {
                    point: u.max(v),
                    degree: n,
                });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Self::from_adjacency(adjacency)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<usize>>) -> Self {
        assert_eq!(labels.len(), self.vertex_count());
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn labels(&self) -> Option<&[Vec<usize>]> {
        self.labels.as_deref()
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Common valency of a regular graph.
    pub fn valency(&self) -> Option<usize> {
        let k = self.adjacency[0].len();
        self.adjacency.iter().all(|l| l.len() == k).then_some(k)
    }

    /// Edges `[u, v]` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut edges = Vec::new();
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list.iter().filter(|&&v| v > u) {
                edges.push([u, v]);
            }
        }
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Breadth-first distances from `v`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotABijection { degree: n });
            }
        }
        if perm.len() != n {
            return Err(Error::NotABijection { degree: n });
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, list) in self.adjacency.iter().enumerate() {
            adjacency[perm[u]] = list.iter().map(|&v| perm[v]).collect();
        }
        Graph::from_adjacency(adjacency)
    }

    /// Whether every generator of `group` maps edges to edges.
    pub fn is_preserved_by(&self, group: &PermGroup) -> bool {
        group.degree() == self.vertex_count()
            && group.generators().iter().all(|g| {
                self.edges()
                    .iter()
                    .all(|&[u, v]| self.are_adjacent(g.apply(u), g.apply(v)))
            })
    }

    pub fn to_json(&self, family: &Family) -> GraphJson {
        GraphJson {
            vertex_count: self.vertex_count(),
            valency: self.valency(),
            edges: self.edges(),
            family: family.to_string(),
        }
    }
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("K_{n} needs at least 2 vertices")));
    }
    let adjacency = (0..n)
        .map(|u| (0..n).filter(|&v| v != u).collect())
        .collect();
    Graph::from_adjacency(adjacency)
}

/// Checks that `group` acts on `graph` by automorphisms.
pub(crate) fn check_action(group: &PermGroup, graph: &Graph) -> Result<()> {
    if group.degree() != graph.vertex_count() {
        return Err(Error::DegreeMismatch {
            expected: graph.vertex_count(),
            found: group.degree(),
        });
    }
    if !graph.is_preserved_by(group) {
        return Err(Error::NotInvariant);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graphs() {
        let k5 = complete_graph(5).unwrap();
        assert_eq!(k5.valency(), Some(4));
        assert_eq!(complete_graph(7).unwrap().edge_count(), 21);
        let k3 = complete_graph(3).unwrap();
        assert_eq!(k3.edges(), vec![[0, 1], [0, 2], [1, 2]]);
        assert!(complete_graph(1).is_err());
    }

    #[test]
    fn rejects_malformed_adjacency() {
        assert!(Graph::from_adjacency(vec![vec![1], vec![]]).is_err());
        assert!(Graph::from_adjacency(vec![vec![0]]).is_err());
        assert!(Graph::from_adjacency(vec![vec![1, 1], vec![0]]).is_err());
    }

    #[test]
    fn connectivity() {
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert_eq!(two_edges.valency(), Some(1));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.is_connected());
        assert_eq!(path.valency(), None);
        assert_eq!(path.distances_from(0), vec![0, 1, 2]);
    }
}
