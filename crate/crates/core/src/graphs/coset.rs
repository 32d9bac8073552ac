use super::Graph;
use crate::error::{Error, Result};
use crate::perm::{CosetSpace, PermGroup, Permutation};

/// Data for `Cos(G, H, HgH)`.
#[derive(Clone, Debug)]
pub struct CosetGraphSpec {
    pub group: PermGroup,
    pub subgroup: PermGroup,
    pub arc_element: Permutation,
}

#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub graph: Graph,
    /// `G` acting on the cosets, which are the vertices.
    pub action: PermGroup,
    pub cosets: CosetSpace,
}

impl CosetGraphSpec {
    /// Checks `H <= G`, `g in G`, `g not in H`, `g^2 in H` and `<H, g> = G`.
    pub fn validate(&self) -> Result<()> {
        let g = &self.arc_element;
        if !self.subgroup.is_subgroup_of(&self.group) || !self.group.contains(g)? {
            return Err(Error::NotInGroup);
        }
        if self.subgroup.contains_unchecked(g) {
            return Err(Error::ArcElementInSubgroup);
        }
        if !self.subgroup.contains_unchecked(&(g * g)) {
            return Err(Error::ArcElementSquareNotInSubgroup);
        }
        if self.subgroup.extend(g)?.order() != self.group.order() {
            return Err(Error::NotGenerating);
        }
        Ok(())
    }
}

/// Coset graph on the right cosets of `H`, numbered breadth-first from `H`.
/// `H` is adjacent to the cosets `H g h`, `h` in `H`, and `Hx` to their
/// translates by `x`.
pub fn coset_graph(spec: &CosetGraphSpec, max_index: u64) -> Result<CosetGraph> {
    spec.validate()?;
    let (g, h) = (&spec.group, &spec.subgroup);
    let cosets = CosetSpace::enumerate(g, h, max_index)?;
    let h_on_cosets: Vec<Permutation> = h
        .generators()
        .iter()
        .map(|x| cosets.permutation_of(h, x))
        .collect();
    let first = cosets.coset_of(h, &spec.arc_element);
    let mut base_neighbours = vec![first];
    let mut i = 0;
    while i < base_neighbours.len() {
        for p in &h_on_cosets {
            let c = p.apply(base_neighbours[i]);
            if !base_neighbours.contains(&c) {
                base_neighbours.push(c);
            }
        }
        i += 1;
    }
    let adjacency = (0..cosets.len())
        .map(|v| {
            base_neighbours
                .iter()
                .map(|&c| cosets.act(h, c, &cosets.reps[v]))
                .collect()
        })
        .collect();
    let graph = Graph::from_adjacency(adjacency)?;
    let action = PermGroup::new(cosets.len(), cosets.generator_action.clone())?;
    Ok(CosetGraph {
        graph,
        action,
        cosets,
    })
}
