//! Subgroup and graph censuses checked against brute-force overgroup lattices.

use std::collections::{BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oddarc::census::{
    class_group, enumerate_2at_coset_graphs, odd_index_subgroups, sylow2_for, MaximalShape,
};
use oddarc::graphs::Family;
use oddarc::perm::{ExceptionalDegree6, GroupTag, PermGroup, Permutation};
use oddarc::Caps;

type ElementSet = BTreeSet<Permutation>;

fn closure(n: usize, gens: &[Permutation]) -> ElementSet {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Classes of proper overgroups of `p` in `group`, by listing every
/// overgroup and counting orbits of `N_G(P)` on them.
fn brute_overgroup_classes(group: &PermGroup, p: &PermGroup) -> Vec<usize> {
    let n = group.degree();
    let elements = group.elements(100_000).unwrap();
    let p_set = closure(n, p.generators());
    let mut found: HashSet<ElementSet> = HashSet::from([p_set.clone()]);
    let mut queue = vec![(p_set.clone(), p.generators().to_vec())];
    while let Some((h, gens)) = queue.pop() {
        // <H, x> depends only on the coset Hx
        let mut done: HashSet<Permutation> = h.iter().cloned().collect();
        for x in &elements {
            if done.contains(x) {
                continue;
            }
            done.extend(h.iter().map(|y| y * x));
            let mut extended = gens.clone();
            extended.push(x.clone());
            let k = closure(n, &extended);
            if found.insert(k.clone()) {
                queue.push((k, extended));
            }
        }
    }
    let normalizer: Vec<&Permutation> = elements
        .iter()
        .filter(|g| p.generators().iter().all(|x| p_set.contains(&x.conjugate_by(g))))
        .collect();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut orders = Vec::new();
    for h in &found {
        if h.len() == elements.len() || seen.contains(h) {
            continue;
        }
        for g in &normalizer {
            seen.insert(h.iter().map(|x| x.conjugate_by(g)).collect());
        }
        orders.push(h.len());
    }
    orders.sort_unstable_by(|a, b| b.cmp(a));
    orders
}

fn tags() -> Vec<GroupTag> {
    vec![
        GroupTag::Symmetric(5),
        GroupTag::Alternating(6),
        GroupTag::Symmetric(6),
        GroupTag::Alternating(7),
        GroupTag::Exceptional(ExceptionalDegree6::M10),
    ]
}

#[test]
fn census_matches_brute_force_lattice() {
    let caps = Caps::default();
    for tag in tags() {
        let group = tag.group().unwrap();
        let p = sylow2_for(tag, &group, &caps).unwrap();
        let census = odd_index_subgroups(tag, &caps).unwrap();
        assert!(!census.incomplete);
        let orders: Vec<usize> = census.classes.iter().map(|c| c.order as usize).collect();
        assert_eq!(orders, brute_overgroup_classes(&group, &p), "{tag}");
    }
}

#[test]
fn classes_have_odd_index_and_contain_the_sylow_subgroup() {
    let caps = Caps::default();
    for tag in tags().into_iter().chain([GroupTag::Symmetric(7), GroupTag::Alternating(8)]) {
        let group = tag.group().unwrap();
        let p = sylow2_for(tag, &group, &caps).unwrap();
        let census = odd_index_subgroups(tag, &caps).unwrap();
        assert_eq!(census.sylow2_order, p.order_u64());
        for c in &census.classes {
            assert_eq!(c.index % 2, 1, "{tag} class {}", c.conjugacy_class_id);
            assert_eq!(c.index * c.order, census.group_order);
            let h = class_group(c, group.degree()).unwrap();
            assert!(h.is_subgroup_of(&group));
            assert!(p.is_subgroup_of(&h));
            // orbits of H are unions of orbits of P
            for orbit in p.orbits() {
                let h_orbit = h.orbit(orbit[0]).unwrap();
                assert!(orbit.iter().all(|x| h_orbit.contains(x)));
            }
        }
    }
}

#[test]
fn maximal_classes_are_maximal() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for tag in [GroupTag::Symmetric(7), GroupTag::Alternating(8), GroupTag::Alternating(9)] {
        let group = tag.group().unwrap();
        let census = odd_index_subgroups(tag, &caps).unwrap();
        for c in census.maximal() {
            let m = class_group(c, group.degree()).unwrap();
            let mut tried = 0;
            while tried < 20 {
                let g = group.random_element(&mut rng);
                if m.contains(&g).unwrap() {
                    continue;
                }
                tried += 1;
                assert_eq!(m.extend(&g).unwrap().order(), group.order(), "{tag} class {}", c.conjugacy_class_id);
            }
            assert_ne!(c.shape, Some(MaximalShape::Unmatched));
        }
        // non-maximal classes lie in a bigger proper class
        for c in census.classes.iter().filter(|c| !c.is_maximal_in_lattice) {
            let h = class_group(c, group.degree()).unwrap();
            let above = census.classes.iter().filter(|d| d.order > c.order).any(|d| {
                let d = class_group(d, group.degree()).unwrap();
                (0..200).any(|_| {
                    let g = group.random_element(&mut rng);
                    h.conjugate(&g).is_subgroup_of(&d)
                })
            });
            assert!(above, "{tag} class {} has no proper overgroup", c.conjugacy_class_id);
        }
    }
}

#[test]
fn insoluble_factors_of_a8_classes() {
    let caps = Caps::default();
    let census = odd_index_subgroups(GroupTag::Alternating(8), &caps).unwrap();
    let agl: Vec<_> = census.classes.iter().filter(|c| c.order == 1344).collect();
    assert_eq!(agl.len(), 2);
    for c in agl {
        assert_eq!(c.index, 15);
        assert_eq!(c.shape, Some(MaximalShape::Agl32InA8));
        let names: Vec<String> = c.factors.iter().map(|f| f.to_string()).collect();
        assert_eq!(names, vec!["C2^3", "simple(168)"]);
    }
}

#[test]
fn census_json_is_deterministic() {
    let caps = Caps::default();
    let a = serde_json::to_string(&odd_index_subgroups(GroupTag::Symmetric(7), &caps).unwrap()).unwrap();
    let b = serde_json::to_string(&odd_index_subgroups(GroupTag::Symmetric(7), &caps).unwrap()).unwrap();
    assert_eq!(a, b);
    let g1 = serde_json::to_string(&enumerate_2at_coset_graphs(GroupTag::Alternating(7), &caps).unwrap()).unwrap();
    let g2 = serde_json::to_string(&enumerate_2at_coset_graphs(GroupTag::Alternating(7), &caps).unwrap()).unwrap();
    assert_eq!(g1, g2);
}

#[test]
fn graph_census_at_degree_7() {
    let caps = Caps::default();
    for tag in [GroupTag::Alternating(7), GroupTag::Symmetric(7)] {
        let census = enumerate_2at_coset_graphs(tag, &caps).unwrap();
        assert!(census.undecided.is_empty());
        let families: BTreeSet<Family> = census.graphs.iter().map(|g| g.family).collect();
        assert_eq!(families, BTreeSet::from([Family::Complete(7), Family::Odd(3)]), "{tag}");
        for g in &census.graphs {
            assert_eq!(g.vertex_count % 2, 1);
            assert!(g.s_max >= 2);
            assert!(g.local.local_2transitive);
            assert_eq!(g.local.local_degree, g.valency);
            assert_eq!(g.vertex_count as u64 * g.subgroup_order, census.subgroups.group_order);
        }
    }
    let a6 = enumerate_2at_coset_graphs(GroupTag::Alternating(6), &caps).unwrap();
    assert!(a6.graphs.is_empty());
}
