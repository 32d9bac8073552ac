use serde::{Deserialize, Serialize};

use super::lattice::{class_group, odd_index_subgroups, SubgroupCensus};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::{
    arc_stabilizer_has_normal_p_subgroup, coset_graph, identify_family, is_s_arc_transitive,
    local_action, CosetGraphSpec, Family, LocalActionReport,
};
use crate::perm::{CosetSpace, GroupTag, PermGroup, Permutation};

/// Node budget for family identification.
pub const IDENTIFY_BUDGET: u64 = 1_000_000;

/// Largest `s` tried when measuring how far arc-transitivity goes.
pub const MAX_S: usize = 8;

/// One connected (G,2)-arc-transitive coset graph of odd order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusGraph {
    pub group: String,
    pub family: Family,
    pub vertex_count: usize,
    pub valency: usize,
    pub subgroup_class_id: usize,
    pub subgroup_order: u64,
    pub arc_element: String,
    /// Largest `s` for which the graph is (G,s)-arc-transitive.
    pub s_max: usize,
    pub local: LocalActionReport,
    /// Set when the double-star kernel is a nontrivial p-group: whether the
    /// arc stabilizer's local action has a nontrivial normal p-subgroup.
    pub arc_stabilizer_normal_p_subgroup: Option<bool>,
}

/// Result of the coset-graph census in one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCensus {
    pub subgroups: SubgroupCensus,
    pub graphs: Vec<CensusGraph>,
    /// Candidates that could not be decided within caps.
    pub undecided: Vec<String>,
}

/// An element `g` of `HxH` with `g^2` in `H`, searched over `x h`, `h` in
/// `H`; every element of `HxH` is conjugate under `H` to one of these.
fn connecting_element(h: &PermGroup, x: &Permutation) -> Option<Permutation> {
    let mut found = None;
    h.for_each_element(|k| {
        let g = x * k;
        if h.contains_unchecked(&(&g * &g)) {
            found = Some(g);
            return false;
        }
        true
    });
    found
}

/// Suborbits of `H` on its cosets other than `{H}`, as (representative, size).
fn suborbits(cosets: &CosetSpace, h: &PermGroup) -> Vec<(usize, usize)> {
    let action: Vec<Permutation> = h
        .generators()
        .iter()
        .map(|x| cosets.permutation_of(h, x))
        .collect();
    let mut seen = vec![false; cosets.len()];
    seen[0] = true;
    let mut out = Vec::new();
    for start in 1..cosets.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut size = 0;
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            size += 1;
            for a in &action {
                let d = a.apply(c);
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        out.push((start, size));
    }
    out
}

/// Every connected (G,2)-arc-transitive coset graph of odd order and
/// valency at least 3 whose vertex stabilizer is an odd-index class.
///
/// For each class `H` and each self-paired suborbit of `H` on its cosets,
/// the coset graph is built when `<H, g>` is the whole group, then tested.
pub fn enumerate_2at_coset_graphs(tag: GroupTag, caps: &Caps) -> Result<GraphCensus> {
    let group = tag.group()?;
    let subgroups = odd_index_subgroups(tag, caps)?;
    let mut graphs = Vec::new();
    let mut undecided = subgroups.notes.clone();
    for record in &subgroups.classes {
        let h = class_group(record, group.degree())?;
        let cosets = match CosetSpace::enumerate(&group, &h, caps.max_index) {
            Ok(c) => c,
            Err(Error::Undecided(msg)) => {
                undecided.push(format!("class {}: {msg}", record.conjugacy_class_id));
                continue;
            }
            Err(e) => return Err(e),
        };
        for (rep, size) in suborbits(&cosets, &h) {
            if size < 3 {
                continue;
            }
            let Some(g) = connecting_element(&h, &cosets.reps[rep]) else {
                continue;
            };
            let spec = CosetGraphSpec {
                group: group.clone(),
                subgroup: h.clone(),
                arc_element: g.clone(),
            };
            let cg = match coset_graph(&spec, caps.max_index) {
                Ok(cg) => cg,
                Err(Error::NotGenerating) => continue,
                Err(Error::Undecided(msg)) => {
                    undecided.push(format!("class {}: {msg}", record.conjugacy_class_id));
                    continue;
                }
                Err(e) => return Err(e),
            };
            match census_entry(tag, record.conjugacy_class_id, &h, &g, &cg.action, &cg.graph, caps) {
                Ok(Some(entry)) => graphs.push(entry),
                Ok(None) => {}
                Err(Error::Undecided(msg)) => {
                    undecided.push(format!("class {}: {msg}", record.conjugacy_class_id))
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(GraphCensus {
        subgroups,
        graphs,
        undecided,
    })
}

fn census_entry(
    tag: GroupTag,
    class_id: usize,
    h: &PermGroup,
    g: &Permutation,
    action: &PermGroup,
    graph: &crate::graphs::Graph,
    caps: &Caps,
) -> Result<Option<CensusGraph>> {
    if graph.vertex_count().is_multiple_of(2) || !is_s_arc_transitive(action, graph, 2, caps)? {
        return Ok(None);
    }
    let mut s_max = 2;
    while s_max < MAX_S && is_s_arc_transitive(action, graph, s_max + 1, caps)? {
        s_max += 1;
    }
    let family = identify_family(graph, IDENTIFY_BUDGET)?;
    let local = local_action(action, graph, 0)?.report;
    let arc_stabilizer_normal_p_subgroup = match local.double_star_prime {
        Some(p) => {
            let b = graph.neighbours(0)[0];
            Some(arc_stabilizer_has_normal_p_subgroup(
                action,
                graph,
                0,
                b,
                p,
                caps.enumeration_limit,
            )?)
        }
        None => None,
    };
    Ok(Some(CensusGraph {
        group: tag.to_string(),
        family,
        vertex_count: graph.vertex_count(),
        valency: graph.valency().unwrap_or(0),
        subgroup_class_id: class_id,
        subgroup_order: h.order_u64(),
        arc_element: g.to_string(),
        s_max,
        local,
        arc_stabilizer_normal_p_subgroup,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_five_gives_k5() {
        let census = enumerate_2at_coset_graphs(GroupTag::Alternating(5), &Caps::default()).unwrap();
        let families: Vec<Family> = census.graphs.iter().map(|g| g.family).collect();
        assert_eq!(families, vec![Family::Complete(5)]);
        assert!(census.undecided.is_empty());
    }
}
