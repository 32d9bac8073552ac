use std::collections::HashSet;

use num_bigint::BigUint;

use super::{check_action, Graph};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// Number of s-arcs, by dynamic programming over arcs: an s-arc is a
/// non-backtracking walk of length `s`.
pub fn count_s_arcs(graph: &Graph, s: usize) -> Result<BigUint> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let n = graph.vertex_count();
    // arc (u, v) is stored at offset[u] + position of v in u's list
    let mut offset = vec![0usize; n + 1];
    for u in 0..n {
        offset[u + 1] = offset[u] + graph.neighbours(u).len();
    }
    let arc_id = |u: usize, v: usize| offset[u] + graph.neighbours(u).binary_search(&v).unwrap();
    let mut counts = vec![BigUint::from(1u32); offset[n]];
    for _ in 1..s {
        let mut next = vec![BigUint::default(); offset[n]];
        for u in 0..n {
            for &v in graph.neighbours(u) {
                let c = &counts[arc_id(u, v)];
                for &w in graph.neighbours(v) {
                    if w != u {
                        next[arc_id(v, w)] += c;
                    }
                }
            }
        }
        counts = next;
    }
    Ok(counts.into_iter().sum())
}

/// The lexicographically first s-arc starting at vertex 0, if any.
pub fn first_s_arc(graph: &Graph, s: usize) -> Option<Vec<usize>> {
    fn extend(graph: &Graph, arc: &mut Vec<usize>, s: usize) -> bool {
        if arc.len() == s + 1 {
            return true;
        }
        let last = *arc.last().unwrap();
        let prev = (arc.len() >= 2).then(|| arc[arc.len() - 2]);
        for &w in graph.neighbours(last) {
            if Some(w) == prev {
                continue;
            }
            arc.push(w);
            if extend(graph, arc, s) {
                return true;
            }
            arc.pop();
        }
        false
    }
    let mut arc = vec![0];
    extend(graph, &mut arc, s).then_some(arc)
}

/// Whether `group` is transitive on vertices and on s-arcs.
///
/// The orbit of one s-arc is closed breadth-first over packed tuples and
/// compared with [`count_s_arcs`]. An orbit is never larger than the group,
/// so a count above `|G|` answers `false` at once.
pub fn is_s_arc_transitive(group: &PermGroup, graph: &Graph, s: usize, caps: &Caps) -> Result<bool> {
    check_action(group, graph)?;
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    if !group.is_transitive() {
        return Ok(false);
    }
    let total = count_s_arcs(graph, s)?;
    if &total > group.order() {
        return Ok(false);
    }
    let Some(start) = first_s_arc(graph, s) else {
        return Ok(true);
    };
    if total > BigUint::from(caps.tuple_cap) {
        return Err(Error::Undecided(format!(
            "{total} s-arcs exceed the tuple cap {}",
            caps.tuple_cap
        )));
    }
    let bits = usize::BITS - (graph.vertex_count() - 1).leading_zeros();
    let bits = bits.max(1) as usize;
    if bits * (s + 1) > 128 {
        return Err(Error::Undecided(format!(
            "{}-arcs on {} vertices do not pack into 128 bits",
            s,
            graph.vertex_count()
        )));
    }
    let pack = |arc: &[usize]| arc.iter().fold(0u128, |acc, &v| acc << bits | v as u128);
    let unpack = |mut key: u128| {
        let mut arc = vec![0usize; s + 1];
        for slot in arc.iter_mut().rev() {
            *slot = (key & ((1u128 << bits) - 1)) as usize;
            key >>= bits;
        }
        arc
    };
    let mut seen: HashSet<u128> = HashSet::from([pack(&start)]);
    let mut queue = vec![pack(&start)];
    while let Some(key) = queue.pop() {
        let arc = unpack(key);
        for g in group.generators() {
            let image: Vec<usize> = arc.iter().map(|&v| g.apply(v)).collect();
            let k = pack(&image);
            if seen.insert(k) {
                queue.push(k);
            }
        }
    }
    Ok(BigUint::from(seen.len()) == total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, odd_graph};
    use crate::perm::{alternating, symmetric};

    #[test]
    fn arc_counts() {
        let k5 = complete_graph(5).unwrap();
        assert_eq!(count_s_arcs(&k5, 2).unwrap(), BigUint::from(60u32));
        assert_eq!(count_s_arcs(&k5, 1).unwrap(), BigUint::from(20u32));
        let o3 = odd_graph(3).unwrap().graph;
        assert_eq!(count_s_arcs(&o3, 2).unwrap(), BigUint::from(420u32));
    }

    #[test]
    fn complete_graph_transitivity_follows_3_transitivity() {
        let k5 = complete_graph(5).unwrap();
        let caps = Caps::default();
        for g in [alternating(5), symmetric(5)] {
            assert!(is_s_arc_transitive(&g, &k5, 2, &caps).unwrap());
            assert!(g.is_k_transitive(3));
        }
        let c5 = PermGroup::new(5, vec![crate::perm::Permutation::parse_cycles(5, "(0 1 2 3 4)").unwrap()]).unwrap();
        assert!(is_s_arc_transitive(&c5, &k5, 1, &caps).is_ok_and(|b| !b));
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let group = PermGroup::new(4, vec![crate::perm::Permutation::parse_cycles(4, "(0 2)(1 3)").unwrap()]).unwrap();
        assert_eq!(is_s_arc_transitive(&group, &g, 1, &Caps::default()), Err(Error::Disconnected));
    }
}
