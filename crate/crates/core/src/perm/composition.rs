//! Composition factors by orbit and block reduction.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::blocks::minimal_block_system;
use super::group::PermGroup;
use super::permutation::Permutation;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::two_adic::factorize;

/// Random elements inspected when telling `A_8` from `PSL(3,4)`.
const ORDER_15_SEARCH: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Cyclic(u64),
    Alternating(usize),
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositionFactor {
    pub kind: FactorKind,
    pub order: BigUint,
    pub multiplicity: usize,
}

impl CompositionFactor {
    pub fn is_insoluble(&self) -> bool {
        !matches!(self.kind, FactorKind::Cyclic(_))
    }
}

impl fmt::Display for CompositionFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FactorKind::Cyclic(p) => write!(f, "C{p}")?,
            FactorKind::Alternating(k) => write!(f, "A{k}")?,
            FactorKind::Other => write!(f, "simple({})", self.order)?,
        }
        if self.multiplicity > 1 {
            write!(f, "^{}", self.multiplicity)?;
        }
        Ok(())
    }
}

/// Composition-factor multiset, sorted by kind then order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub factors: Vec<CompositionFactor>,
    pub warnings: Vec<String>,
}

impl CompositionReport {
    pub fn insoluble(&self) -> impl Iterator<Item = &CompositionFactor> {
        self.factors.iter().filter(|f| f.is_insoluble())
    }

    pub fn is_soluble(&self) -> bool {
        self.insoluble().next().is_none()
    }

    pub fn only_alternating_insoluble(&self) -> bool {
        self.insoluble()
            .all(|f| matches!(f.kind, FactorKind::Alternating(_)))
    }

    /// Product of all factor orders with multiplicity; equals the group order.
    pub fn total_order(&self) -> BigUint {
        let mut total = BigUint::one();
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                total *= &f.order;
            }
        }
        total
    }
}

type Multiset = BTreeMap<(FactorKind, BigUint), usize>;

fn add_to(target: &mut Multiset, other: &Multiset) {
    for (k, m) in other {
        *target.entry(k.clone()).or_default() += m;
    }
}

fn subtract(target: &mut Multiset, other: &Multiset) {
    for (k, m) in other {
        let entry = target
            .get_mut(k)
            .expect("factors of a subnormal section are factors of the group");
        *entry -= m;
        if *entry == 0 {
            target.remove(k);
        }
    }
}

struct Analyzer<'a> {
    caps: &'a Caps,
    rng: ChaCha8Rng,
    warnings: Vec<String>,
}

/// Composition factors of `group`.
///
/// Intransitive groups split into the action on one orbit and its kernel,
/// imprimitive groups into the action on a minimal block system and its
/// kernel. Soluble groups are read off the derived series. An insoluble
/// primitive group first loses its soluble top via the derived series; a
/// perfect primitive group with a proper normal subgroup `N` (necessarily
/// transitive) uses `G = N G_a`, so that the factors of `G` are those of
/// `N` and `G_a` less those of `N_a`. Simple groups are named by order.
pub fn composition_factors(group: &PermGroup, caps: &Caps) -> Result<CompositionReport> {
    let mut analyzer = Analyzer {
        caps,
        rng: ChaCha8Rng::seed_from_u64(caps.seed),
        warnings: Vec::new(),
    };
    let set = analyzer.factors(group)?;
    let factors = set
        .into_iter()
        .map(|((kind, order), multiplicity)| CompositionFactor {
            kind,
            order,
            multiplicity,
        })
        .collect();
    let mut warnings = analyzer.warnings;
    warnings.sort();
    warnings.dedup();
    Ok(CompositionReport { factors, warnings })
}

impl Analyzer<'_> {
    fn factors(&mut self, g: &PermGroup) -> Result<Multiset> {
        if g.is_trivial() {
            return Ok(Multiset::new());
        }
        if g.order() > &BigUint::from(self.caps.max_order) {
            return Err(Error::Undecided(format!(
                "group order {} exceeds the order cap {}",
                g.order(),
                self.caps.max_order
            )));
        }
        let series = g.derived_series();
        let bottom = series.last().unwrap();
        let mut set = Multiset::new();
        for w in series.windows(2) {
            add_cyclic(&mut set, &(w[0].order() / w[1].order()));
        }
        if bottom.is_trivial() {
            return Ok(set);
        }
        if bottom.order() != g.order() {
            let rest = self.factors(bottom)?;
            add_to(&mut set, &rest);
            return Ok(set);
        }
        add_to(&mut set, &self.perfect(g)?);
        Ok(set)
    }

    /// Factors of a nontrivial perfect group.
    fn perfect(&mut self, g: &PermGroup) -> Result<Multiset> {
        let orbits = g.orbits();
        if let Some(orbit) = orbits.iter().find(|o| o.len() > 1 && o.len() < g.degree()) {
            let (image, kernel) = g.action_on_orbit(orbit)?;
            let mut set = self.factors(&image)?;
            add_to(&mut set, &self.factors(&kernel)?);
            return Ok(set);
        }
        if let Some(system) = minimal_block_system(g)? {
            let (image, kernel) = g.action_on_blocks(&system.blocks)?;
            let mut set = self.factors(&image)?;
            add_to(&mut set, &self.factors(&kernel)?);
            return Ok(set);
        }
        match self.proper_normal_subgroup(g)? {
            Some(n) => {
                let stab = g.point_stabilizer(0)?;
                let n_stab = n.point_stabilizer(0)?;
                let mut set = self.factors(&n)?;
                add_to(&mut set, &self.factors(&stab)?);
                subtract(&mut set, &self.factors(&n_stab)?);
                Ok(set)
            }
            None => {
                let mut set = Multiset::new();
                set.insert((self.name_simple(g), g.order().clone()), 1);
                Ok(set)
            }
        }
    }

    /// A proper nontrivial normal subgroup of a perfect primitive group, or
    /// `None` when the group is simple.
    fn proper_normal_subgroup(&mut self, g: &PermGroup) -> Result<Option<PermGroup>> {
        let n = g.degree();
        if g.order() == &(factorial(n) / 2u32) && n >= 5 {
            return Ok(None);
        }
        let proper = |c: &PermGroup| !c.is_trivial() && c.order() != g.order();
        let mut candidates: Vec<Permutation> = g.generators().to_vec();
        for _ in 0..32 {
            candidates.push(g.random_element(&mut self.rng));
        }
        for x in &candidates {
            let c = g.normal_closure_unchecked(std::slice::from_ref(x));
            if proper(&c) {
                return Ok(Some(c));
            }
        }
        // a regular elementary abelian normal subgroup consists of
        // fixed-point-free elements of prime order
        let factors = factorize(n as u64);
        if factors.len() == 1 {
            let p = factors[0].0;
            for _ in 0..2000 {
                let x = g.random_element(&mut self.rng);
                let o = x.order();
                if !o.is_multiple_of(p) {
                    continue;
                }
                let y = x.pow(o / p);
                if (0..n).all(|i| y.apply(i) != i) {
                    let c = g.normal_closure_unchecked(std::slice::from_ref(&y));
                    if proper(&c) {
                        return Ok(Some(c));
                    }
                }
            }
        }
        self.normal_subgroup_by_classes(g)
    }

    /// Exact test: the normal closure of one representative per conjugacy class.
    fn normal_subgroup_by_classes(&mut self, g: &PermGroup) -> Result<Option<PermGroup>> {
        let limit = self.caps.enumeration_limit;
        if g.order() > &BigUint::from(limit) {
            return Err(Error::Undecided(format!(
                "simplicity of a group of order {} needs class enumeration beyond {limit}",
                g.order()
            )));
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut reps: Vec<Permutation> = Vec::new();
        for x in g.elements(limit)? {
            if x.is_identity() || seen.contains(&x) {
                continue;
            }
            let mut class = vec![x.clone()];
            seen.insert(x.clone());
            let mut i = 0;
            while i < class.len() {
                for h in g.generators() {
                    let y = class[i].conjugate_by(h);
                    if seen.insert(y.clone()) {
                        class.push(y);
                    }
                }
                i += 1;
            }
            reps.push(x);
        }
        // small classes generate small normal subgroups; try them first
        for x in &reps {
            let c = g.normal_closure_unchecked(std::slice::from_ref(x));
            if c.order() != g.order() {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn name_simple(&mut self, g: &PermGroup) -> FactorKind {
        let order = g.order();
        if let Some(k) = alternating_degree(order) {
            if k != 8 {
                return FactorKind::Alternating(k);
            }
            // A_8 and PSL(3,4) share order 20160; only A_8 has elements of order 15
            for _ in 0..ORDER_15_SEARCH {
                if g.random_element(&mut self.rng).order() == 15 {
                    return FactorKind::Alternating(8);
                }
            }
            self.warnings.push(format!(
                "no element of order 15 among {ORDER_15_SEARCH} samples of a simple group of order 20160; classified as other"
            ));
        }
        FactorKind::Other
    }
}

fn add_cyclic(set: &mut Multiset, order: &BigUint) {
    let n = order.to_u64().expect("abelian section orders fit in u64");
    for (p, e) in factorize(n) {
        *set.entry((FactorKind::Cyclic(p), BigUint::from(p))).or_default() += e as usize;
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `k` with `k!/2 = order` and `k >= 5`.
fn alternating_degree(order: &BigUint) -> Option<usize> {
    let mut k = 5;
    loop {
        let a = factorial(k) / 2u32;
        if &a == order {
            return Some(k);
        }
        if &a > order {
            return None;
        }
        k += 1;
    }
}
