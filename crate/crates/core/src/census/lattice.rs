use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::{
    all_block_systems, composition_factors, sylow2, sylow_subgroup, CompositionFactor,
    CosetSpace, FactorKind, GroupTag, PermGroup, Permutation,
};

/// One conjugacy class of odd-index subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub conjugacy_class_id: usize,
    pub generators: Vec<String>,
    pub order: u64,
    pub index: u64,
    pub orbit_signature: Vec<usize>,
    pub soluble: bool,
    pub factors: Vec<CompositionFactor>,
    /// Set when the composition factors could not be decided within caps.
    pub factors_undecided: Option<String>,
    pub is_maximal_in_lattice: bool,
    /// Shape of a lattice-maximal class; `None` for the others.
    pub shape: Option<MaximalShape>,
}

impl SubgroupRecord {
    /// Insoluble factors that are not alternating.
    pub fn non_alternating_insoluble(&self) -> Vec<&CompositionFactor> {
        self.factors
            .iter()
            .filter(|f| f.is_insoluble() && !matches!(f.kind, FactorKind::Alternating(_)))
            .collect()
    }
}

/// Shapes a maximal subgroup of odd index can take.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum MaximalShape {
    /// `(S_m x S_{n-m}) ∩ G` with `1 <= m < n/2`.
    Intransitive { m: usize },
    /// `(S_m wr S_k) ∩ G` with `n = mk`.
    Imprimitive { m: usize, k: usize },
    /// `SL(3,2)` in `A_7`.
    Sl32InA7,
    /// `AGL(3,2)` in `A_8`.
    Agl32InA8,
    Sylow2,
    Unmatched,
}

/// Classes of odd-index proper subgroups of one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupCensus {
    pub group: String,
    pub group_order: u64,
    pub sylow2_order: u64,
    pub classes: Vec<SubgroupRecord>,
    /// True when a cap stopped the lattice closure early.
    pub incomplete: bool,
    pub notes: Vec<String>,
}

impl SubgroupCensus {
    pub fn maximal(&self) -> impl Iterator<Item = &SubgroupRecord> {
        self.classes.iter().filter(|c| c.is_maximal_in_lattice)
    }

    pub fn insoluble(&self) -> impl Iterator<Item = &SubgroupRecord> {
        self.classes.iter().filter(|c| !c.soluble)
    }
}

/// Groups found by the lattice closure, before records are made.
pub(crate) struct LatticeMember {
    pub group: PermGroup,
    pub maximal: bool,
}

/// A Sylow 2-subgroup: the wreath construction for `A_n`/`S_n`, a search otherwise.
pub fn sylow2_for(tag: GroupTag, group: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    match tag {
        GroupTag::Alternating(n) => Ok(sylow2(n, true)),
        GroupTag::Symmetric(n) => Ok(sylow2(n, false)),
        GroupTag::Exceptional(_) => sylow_subgroup(group, 2, caps.enumeration_limit),
    }
}

/// `N_G(P)` from the right cosets of `P`.
fn normalizer_of(group: &PermGroup, p: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    let cosets = CosetSpace::enumerate(group, p, caps.max_index)?;
    let mut n = p.clone();
    for rep in &cosets.reps {
        if !n.contains_unchecked(rep)
            && p.generators().iter().all(|x| p.contains_unchecked(&x.conjugate_by(rep)))
        {
            n = n.extend(rep)?;
        }
    }
    Ok(n)
}

/// Representatives of the double cosets `K g K` other than `K`.
fn double_coset_reps(group: &PermGroup, k: &PermGroup, caps: &Caps) -> Result<Vec<Permutation>> {
    let cosets = CosetSpace::enumerate(group, k, caps.max_index)?;
    let action: Vec<Permutation> = k
        .generators()
        .iter()
        .map(|x| cosets.permutation_of(k, x))
        .collect();
    let mut seen = vec![false; cosets.len()];
    seen[0] = true;
    let mut reps = Vec::new();
    for start in 1..cosets.len() {
        if seen[start] {
            continue;
        }
        reps.push(cosets.reps[start].clone());
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for a in &action {
                let d = a.apply(c);
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
    }
    Ok(reps)
}

fn conjugate_under(normalizer_elements: &[Permutation], h1: &PermGroup, h2: &PermGroup) -> bool {
    normalizer_elements.iter().any(|n| {
        h1.generators()
            .iter()
            .all(|x| h2.contains_unchecked(&x.conjugate_by(n)))
    })
}

fn invariants(h: &PermGroup) -> (BigUint, Vec<usize>, Option<usize>) {
    (h.order().clone(), h.orbit_signature(), h.derived_length())
}

/// Breadth-first closure of the overgroups of `p` in `group`, one member per
/// conjugacy class. Members are extended by double coset representatives;
/// overgroups of `p` that are conjugate in `group` are conjugate under
/// `N(p)`, which dedupes the classes.
pub(crate) fn overgroup_lattice(
    group: &PermGroup,
    p: &PermGroup,
    caps: &Caps,
) -> Result<(Vec<LatticeMember>, Vec<String>)> {
    let normalizer = normalizer_of(group, p, caps)?;
    let normalizer_elements = normalizer.elements(caps.enumeration_limit)?;
    let mut members: Vec<LatticeMember> = vec![LatticeMember {
        group: p.clone(),
        maximal: false,
    }];
    let mut keys = vec![invariants(p)];
    let mut notes = Vec::new();
    let mut i = 0;
    while i < members.len() {
        let k = members[i].group.clone();
        i += 1;
        if k.order() == group.order() {
            continue;
        }
        let reps = match double_coset_reps(group, &k, caps) {
            Ok(r) => r,
            Err(Error::Undecided(msg)) => {
                notes.push(msg);
                return Err(Error::Undecided(notes.join("; ")));
            }
            Err(e) => return Err(e),
        };
        let mut maximal = true;
        for g in reps {
            let h = k.extend(&g)?;
            if h.order() != group.order() {
                maximal = false;
            }
            let key = invariants(&h);
            let known = keys.iter().zip(&members).any(|(kk, m)| {
                kk == &key && (m.group.same_group(&h) || conjugate_under(&normalizer_elements, &h, &m.group))
            });
            if !known {
                keys.push(key);
                members.push(LatticeMember {
                    group: h,
                    maximal: false,
                });
            }
        }
        members[i - 1].maximal = maximal;
    }
    Ok((members, notes))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Matches a lattice-maximal class against the known shapes.
fn classify_maximal(tag: GroupTag, group: &PermGroup, h: &PermGroup, sylow_order: &BigUint) -> Result<MaximalShape> {
    let n = group.degree();
    let order = h.order();
    if let GroupTag::Exceptional(_) = tag {
        return Ok(if order == sylow_order {
            MaximalShape::Sylow2
        } else {
            MaximalShape::Unmatched
        });
    }
    let halve = matches!(tag, GroupTag::Alternating(_));
    let expect = |o: BigUint| if halve { o / 2u32 } else { o };
    let orbits = h.orbits();
    if orbits.len() == 2 {
        let m = orbits[0].len().min(orbits[1].len());
        if 2 * m < n && order == &expect(factorial(m) * factorial(n - m)) {
            return Ok(MaximalShape::Intransitive { m });
        }
    }
    if orbits.len() == 1 {
        for system in all_block_systems(h)? {
            let (m, k) = (system.block_size(), system.block_count());
            let full = factorial(m).pow(k as u32) * factorial(k);
            if order == &expect(full) {
                return Ok(MaximalShape::Imprimitive { m, k });
            }
        }
        let primitive = all_block_systems(h)?.is_empty();
        match (tag, order.to_u64()) {
            (GroupTag::Alternating(7), Some(168)) if primitive => return Ok(MaximalShape::Sl32InA7),
            (GroupTag::Alternating(8), Some(1344)) if primitive => return Ok(MaximalShape::Agl32InA8),
            _ => {}
        }
    }
    Ok(MaximalShape::Unmatched)
}

/// Conjugacy classes of proper odd-index subgroups of the group named by
/// `tag`, as overgroups of a Sylow 2-subgroup. Classes are sorted by order
/// (descending), then orbit signature, then discovery order.
pub fn odd_index_subgroups(tag: GroupTag, caps: &Caps) -> Result<SubgroupCensus> {
    caps.validate()?;
    let group = tag.group()?;
    let p = sylow2_for(tag, &group, caps)?;
    let mut notes = Vec::new();
    let (members, lattice_notes, incomplete) = match overgroup_lattice(&group, &p, caps) {
        Ok((m, n)) => (m, n, false),
        Err(Error::Undecided(msg)) => {
            notes.push(msg);
            (Vec::new(), Vec::new(), true)
        }
        Err(e) => return Err(e),
    };
    notes.extend(lattice_notes);
    let mut records = Vec::new();
    for member in members.iter().filter(|m| m.group.order() != group.order()) {
        let h = &member.group;
        let (factors, factors_undecided) = match composition_factors(h, caps) {
            Ok(r) => (r.factors, None),
            Err(Error::Undecided(msg)) => (Vec::new(), Some(msg)),
            Err(e) => return Err(e),
        };
        let shape = if member.maximal {
            Some(classify_maximal(tag, &group, h, p.order())?)
        } else {
            None
        };
        let index = (group.order() / h.order())
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument("index overflow".into()))?;
        records.push(SubgroupRecord {
            conjugacy_class_id: 0,
            generators: h.generators().iter().map(|g| g.to_string()).collect(),
            order: h.order_u64(),
            index,
            orbit_signature: h.orbit_signature(),
            soluble: h.is_soluble(),
            factors,
            factors_undecided,
            is_maximal_in_lattice: member.maximal,
            shape,
        });
    }
    // stable sort keeps discovery order among ties
    records.sort_by(|a, b| {
        b.order
            .cmp(&a.order)
            .then_with(|| a.orbit_signature.cmp(&b.orbit_signature))
    });
    for (i, r) in records.iter_mut().enumerate() {
        r.conjugacy_class_id = i;
    }
    Ok(SubgroupCensus {
        group: tag.to_string(),
        group_order: group.order_u64(),
        sylow2_order: p.order_u64(),
        classes: records,
        incomplete,
        notes,
    })
}

/// The lattice-maximal classes.
pub fn maximal_odd_index_subgroups(tag: GroupTag, caps: &Caps) -> Result<Vec<SubgroupRecord>> {
    Ok(odd_index_subgroups(tag, caps)?
        .classes
        .into_iter()
        .filter(|c| c.is_maximal_in_lattice)
        .collect())
}

/// Generators of each class, rebuilt as groups.
pub fn class_group(record: &SubgroupRecord, degree: usize) -> Result<PermGroup> {
    let gens = record
        .generators
        .iter()
        .map(|s| Permutation::parse_cycles(degree, s))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::with_known_order(degree, gens, &BigUint::from(record.order))
}
