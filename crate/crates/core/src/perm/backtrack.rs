//! Backtrack searches over stabilizer chains.

use super::cosets::CosetSpace;
use super::group::PermGroup;
use super::permutation::Permutation;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Setwise stabilizer `G_Δ` by backtracking through a chain whose base
/// starts with the points of `Δ` (or of its complement, whichever is smaller).
///
/// A node off the identity path is pruned when the subgroup found so far
/// already contains an element with the same base images.
pub fn setwise_stabilizer(group: &PermGroup, subset: &[usize], budget: u64) -> Result<PermGroup> {
    let n = group.degree();
    let mut inside = vec![false; n];
    for &x in subset {
        if x >= n {
            return Err(Error::PointOutOfRange { point: x, degree: n });
        }
        inside[x] = true;
    }
    let size = inside.iter().filter(|&&b| b).count();
    if size == 0 || size == n {
        return Ok(group.clone());
    }
    // use the smaller side as the search prefix
    let prefix: Vec<usize> = if size <= n - size {
        (0..n).filter(|&x| inside[x]).collect()
    } else {
        for b in &mut inside {
            *b = !*b;
        }
        (0..n).filter(|&x| inside[x]).collect()
    };
    let rechained = group.with_base_prefix(&prefix)?;
    let depth = prefix.len();
    let levels = &rechained.chain().levels;
    let mut found = group.pointwise_stabilizer(&prefix)?;
    let mut found_chain = found.with_base_prefix(&prefix)?;
    let mut nodes = 0u64;

    struct Frame {
        level: usize,
        acc: Permutation,
        on_identity_path: bool,
    }
    let mut stack = vec![Frame {
        level: 0,
        acc: group.identity(),
        on_identity_path: true,
    }];
    while let Some(frame) = stack.pop() {
        nodes += 1;
        if nodes > budget {
            return Err(Error::Undecided(format!(
                "setwise stabilizer search exceeded {budget} nodes"
            )));
        }
        if frame.level == depth {
            if !found.contains_unchecked(&frame.acc) {
                found = found.extend(&frame.acc)?;
                found_chain = found.with_base_prefix(&prefix)?;
            }
            continue;
        }
        if !frame.on_identity_path && covered(&found_chain, &frame.acc, frame.level) {
            continue;
        }
        let level = &levels[frame.level];
        // push in reverse so the identity branch (the base point itself) is explored first
        let mut children: Vec<Frame> = Vec::new();
        for &x in &level.orbit {
            let image = frame.acc.apply(x);
            if !inside[image] {
                continue;
            }
            let u = level.representative(x).unwrap();
            children.push(Frame {
                level: frame.level + 1,
                acc: u * &frame.acc,
                on_identity_path: frame.on_identity_path && x == level.point,
            });
        }
        children.sort_by_key(|f| !f.on_identity_path);
        stack.extend(children.into_iter().rev());
    }
    Ok(found)
}

/// Whether some element of `found` agrees with `acc` on the first `depth` base points.
fn covered(found: &PermGroup, acc: &Permutation, depth: usize) -> bool {
    let mut h = acc.clone();
    for level in found.chain().levels.iter().take(depth) {
        let x = h.apply(level.point);
        match &level.transversal[x] {
            Some((_, inv)) => h = &h * inv,
            None => return false,
        }
    }
    true
}

/// Outcome of a subgroup conjugacy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `H1^g = H2` for the stored `g`.
    Conjugate(Permutation),
    NotConjugate,
}

impl Conjugacy {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Conjugacy::Conjugate(_))
    }
}

fn derived_signature(g: &PermGroup) -> Vec<num_bigint::BigUint> {
    g.derived_series().iter().map(|d| d.order().clone()).collect()
}

/// Decides whether `h1` and `h2` are conjugate in `group`.
///
/// Invariants (order, orbit-size multiset, derived-series orders) are
/// compared first. The search then runs over left cosets `g H2`, since
/// `H1^g = H2` depends only on `g H2`; exceeding the caps is undecided.
pub fn is_conjugate_subgroup(
    group: &PermGroup,
    h1: &PermGroup,
    h2: &PermGroup,
    caps: &Caps,
) -> Result<Conjugacy> {
    if !h1.is_subgroup_of(group) || !h2.is_subgroup_of(group) {
        return Err(Error::NotInGroup);
    }
    if h1.order() != h2.order() || h1.orbit_signature() != h2.orbit_signature() {
        return Ok(Conjugacy::NotConjugate);
    }
    if derived_signature(h1) != derived_signature(h2) {
        return Ok(Conjugacy::NotConjugate);
    }
    let index = group.order() / h2.order();
    if index > caps.backtrack_budget.into() {
        return Err(Error::Undecided(format!(
            "conjugacy search over {index} cosets exceeds the budget"
        )));
    }
    let space = CosetSpace::enumerate(group, h2, caps.max_index.max(caps.backtrack_budget))?;
    for rep in &space.reps {
        let g = rep.inverse();
        if h1
            .generators()
            .iter()
            .all(|x| h2.contains_unchecked(&x.conjugate_by(&g)))
        {
            return Ok(Conjugacy::Conjugate(g));
        }
    }
    Ok(Conjugacy::NotConjugate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::named::{alternating, symmetric};

    #[test]
    fn setwise_stabilizer_orders() {
        let s7 = symmetric(7);
        assert_eq!(setwise_stabilizer(&s7, &[0, 1, 2], 1_000_000).unwrap().order_u64(), 144);
        let a7 = alternating(7);
        let stab = setwise_stabilizer(&a7, &[0, 1, 2], 1_000_000).unwrap();
        assert_eq!(stab.order_u64(), 72);
        assert!(stab.orbits().contains(&vec![0, 1, 2]));
        let full: Vec<usize> = (0..7).collect();
        assert!(setwise_stabilizer(&a7, &full, 10).unwrap().same_group(&a7));
    }

    #[test]
    fn setwise_stabilizer_budget() {
        let s9 = symmetric(9);
        assert!(matches!(
            setwise_stabilizer(&s9, &[0, 1, 2, 3], 3),
            Err(Error::Undecided(_))
        ));
    }

    #[test]
    fn point_stabilizers_are_conjugate() {
        let g = alternating(6);
        let h1 = g.point_stabilizer(0).unwrap();
        let h2 = g.point_stabilizer(4).unwrap();
        match is_conjugate_subgroup(&g, &h1, &h2, &Caps::default()).unwrap() {
            Conjugacy::Conjugate(x) => assert!(h1.conjugate(&x).same_group(&h2)),
            Conjugacy::NotConjugate => panic!("point stabilizers are conjugate"),
        }
    }

    #[test]
    fn different_orders_not_conjugate() {
        let s4 = symmetric(4);
        let a4 = alternating(4);
        let c3 = PermGroup::new(4, vec![Permutation::parse_cycles(4, "(0 1 2)").unwrap()]).unwrap();
        assert_eq!(
            is_conjugate_subgroup(&s4, &a4, &c3, &Caps::default()).unwrap(),
            Conjugacy::NotConjugate
        );
    }
}
