use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::odd::odd_graph;
use super::Graph;
use crate::error::{Error, Result};

/// Graph families recognised by [`identify_family`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Complete(usize),
    Odd(usize),
    Other,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete({n})"),
            Family::Odd(m) => write!(f, "odd({m})"),
            Family::Other => write!(f, "other"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |inner: &str| {
            inner
                .strip_suffix(')')
                .and_then(|x| x.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad family {s:?}")))
        };
        if s == "other" {
            Ok(Family::Other)
        } else if let Some(rest) = s.strip_prefix("complete(") {
            Ok(Family::Complete(parse(rest)?))
        } else if let Some(rest) = s.strip_prefix("odd(") {
            Ok(Family::Odd(parse(rest)?))
        } else {
            Err(Error::Parse(format!("bad family {s:?}")))
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Names a connected regular graph as `K_n`, `O_m` or other. Exceeding
/// `budget` isomorphism-search nodes is undecided.
pub fn identify_family(graph: &Graph, budget: u64) -> Result<Family> {
    let n = graph.vertex_count();
    let Some(k) = graph.valency() else {
        return Ok(Family::Other);
    };
    if k + 1 == n {
        return Ok(Family::Complete(n));
    }
    if !graph.is_connected() {
        return Ok(Family::Other);
    }
    let m = k - 1;
    if m < 1 || odd_order(m) != Some(n) {
        return Ok(Family::Other);
    }
    let target = odd_graph(m)?.graph;
    if isomorphic(graph, &target, budget)? {
        Ok(Family::Odd(m))
    } else {
        Ok(Family::Other)
    }
}

/// `C(2m+1, m)` if it fits.
fn odd_order(m: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 0..m {
        acc = acc.checked_mul(2 * m + 1 - i)? / (i + 1);
    }
    Some(acc)
}

fn distance_profile(g: &Graph, v: usize) -> Vec<usize> {
    let mut profile = Vec::new();
    for d in g.distances_from(v) {
        if profile.len() <= d {
            profile.resize(d + 1, 0);
        }
        profile[d] += 1;
    }
    profile
}

/// Backtracking isomorphism test for connected graphs with a
/// vertex-transitive target. Vertices of `a` are taken in breadth-first
/// order, each mapped into the neighbourhood of its parent's image.
fn isomorphic(a: &Graph, b: &Graph, budget: u64) -> Result<bool> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.valency() != b.valency() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    if distance_profile(a, 0) != distance_profile(b, 0) {
        return Ok(false);
    }
    let dist = a.distances_from(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (dist[v], v));
    let mut parent = vec![usize::MAX; n];
    for &v in &order[1..] {
        parent[v] = *a
            .neighbours(v)
            .iter()
            .find(|&&u| dist[u] + 1 == dist[v])
            .unwrap();
    }
    let mut forward = vec![usize::MAX; n];
    let mut backward = vec![usize::MAX; n];
    forward[order[0]] = 0;
    backward[0] = order[0];
    let mut nodes = 0u64;
    // candidate cursor per depth
    let mut cursor = vec![0usize; n];
    let mut depth = 1;
    while depth > 0 {
        if depth == n {
            return Ok(true);
        }
        let v = order[depth];
        let candidates = b.neighbours(forward[parent[v]]);
        let mut placed = false;
        while cursor[depth] < candidates.len() {
            let w = candidates[cursor[depth]];
            cursor[depth] += 1;
            nodes += 1;
            if nodes > budget {
                return Err(Error::Undecided(format!(
                    "isomorphism search exceeded {budget} nodes"
                )));
            }
            if backward[w] != usize::MAX || !consistent(a, b, &forward, &backward, v, w) {
                continue;
            }
            forward[v] = w;
            backward[w] = v;
            placed = true;
            break;
        }
        if placed {
            depth += 1;
            if depth < n {
                cursor[depth] = 0;
            }
        } else {
            depth -= 1;
            if depth == 0 {
                break;
            }
            let u = order[depth];
            backward[forward[u]] = usize::MAX;
            forward[u] = usize::MAX;
        }
    }
    Ok(false)
}

/// Mapping `v -> w` keeps adjacency with every vertex mapped so far.
fn consistent(a: &Graph, b: &Graph, forward: &[usize], backward: &[usize], v: usize, w: usize) -> bool {
    let mapped_a = a.neighbours(v).iter().filter(|&&u| forward[u] != usize::MAX);
    let mut count = 0;
    for &u in mapped_a {
        if !b.are_adjacent(w, forward[u]) {
            return false;
        }
        count += 1;
    }
    let mapped_b = b.neighbours(w).iter().filter(|&&x| backward[x] != usize::MAX).count();
    count == mapped_b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete_graph;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn families() {
        assert_eq!(identify_family(&complete_graph(7).unwrap(), 1000).unwrap(), Family::Complete(7));
        let cycle: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        let c7 = Graph::from_edges(7, &cycle).unwrap();
        assert_eq!(identify_family(&c7, 1000).unwrap(), Family::Other);
    }

    #[test]
    fn relabelled_odd_graph() {
        let o3 = odd_graph(3).unwrap().graph;
        let mut perm: Vec<usize> = (0..35).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(7));
        let shuffled = o3.relabel(&perm).unwrap();
        assert_eq!(identify_family(&shuffled, 1_000_000).unwrap(), Family::Odd(3));
    }

    #[test]
    fn family_strings_round_trip() {
        for f in [Family::Complete(5), Family::Odd(3), Family::Other] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }
}
