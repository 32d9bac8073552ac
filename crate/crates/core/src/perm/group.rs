use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chain::Chain;
use super::permutation::Permutation;
use crate::caps::DEFAULT_SEED;
use crate::error::{Error, Result};

/// Upper bound on derived-series iterations; stabilization before reaching
/// the trivial group means the group is insoluble.
pub const DERIVED_SERIES_CAP: usize = 64;

/// A permutation group given by generators together with a complete
/// stabilizer chain. Immutable once built.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Chain,
    order: BigUint,
}

/// Product-replacement sampler for groups without a chain yet.
pub(crate) struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    pub fn new<R: Rng>(degree: usize, generators: &[Permutation], rng: &mut R) -> Self {
        let mut slots: Vec<Permutation> = generators.to_vec();
        if slots.is_empty() {
            slots.push(Permutation::identity(degree));
        }
        while slots.len() < 10 {
            let g = slots[slots.len() % generators.len().max(1)].clone();
            slots.push(g);
        }
        let mut pr = ProductReplacement {
            slots,
            acc: Permutation::identity(degree),
        };
        for _ in 0..50 {
            pr.next(rng);
        }
        pr
    }

    pub fn next<R: Rng>(&mut self, rng: &mut R) -> Permutation {
        let n = self.slots.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let s = if rng.gen_bool(0.5) {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        self.slots[i] = if rng.gen_bool(0.5) {
            &self.slots[i] * &s
        } else {
            &s * &self.slots[i]
        };
        self.acc = &self.acc * &self.slots[i];
        self.acc.clone()
    }
}

fn check_degrees(degree: usize, generators: &[Permutation]) -> Result<()> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    Ok(())
}

impl PermGroup {
    /// Deterministic stabilizer-chain construction; base points are the
    /// smallest moved point of each new residue.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        check_degrees(degree, &generators)?;
        let generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = Chain::build(degree, &generators, &[]);
        Ok(Self::from_parts(degree, generators, chain))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new(), Chain::new(degree, &[]))
    }

    /// Builds the chain by randomized sifting against a known order. The
    /// result is exact: if the order is not reached the deterministic
    /// completion runs, and the true order is returned.
    pub fn with_known_order(
        degree: usize,
        generators: Vec<Permutation>,
        order: &BigUint,
    ) -> Result<Self> {
        check_degrees(degree, &generators)?;
        let generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let mut pr = ProductReplacement::new(degree, &generators, &mut rng);
        let chain = Chain::build_with_order(degree, &generators, &[], order, &mut rng, |r| {
            pr.next(r)
        });
        Ok(Self::from_parts(degree, generators, chain))
    }

    pub(crate) fn from_parts(degree: usize, generators: Vec<Permutation>, chain: Chain) -> Self {
        let order = chain.order();
        PermGroup {
            degree,
            generators,
            chain,
            order,
        }
    }

    /// Subgroup described by the tail of this group's chain from `start`.
    fn subgroup_from_tail(&self, chain: &Chain, start: usize) -> PermGroup {
        let tail = chain.tail(start);
        let gens = tail.strong_generators_from(0);
        Self::from_parts(self.degree, gens, tail)
    }

    pub(crate) fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> u64 {
        self.order.to_u64().expect("group order exceeds u64")
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators_from(0)
    }

    /// Sizes of the fundamental orbits along the chain.
    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.chain.contains(p))
    }

    pub(crate) fn contains_unchecked(&self, p: &Permutation) -> bool {
        self.chain.contains(p)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    /// All elements, refusing groups larger than `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>> {
        if self.order > BigUint::from(limit) {
            return Err(Error::Undecided(format!(
                "group of order {} exceeds the enumeration limit {limit}",
                self.order
            )));
        }
        let mut out = Vec::with_capacity(self.order_u64() as usize);
        self.chain.for_each_element(|g| {
            out.push(g.clone());
            true
        });
        Ok(out)
    }

    /// Visits elements until `f` returns false.
    pub fn for_each_element(&self, f: impl FnMut(&Permutation) -> bool) {
        self.chain.for_each_element(f)
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(orbit_of(&self.generators, self.degree, point))
    }

    /// Orbits ordered by smallest point, each sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(&self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 1 || orbit_of(&self.generators, self.degree, 0).len() == self.degree
    }

    /// Sorted multiset of orbit sizes.
    pub fn orbit_signature(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits().iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        sizes
    }

    /// Same group, rechained with the given points first in the base.
    pub fn with_base_prefix(&self, prefix: &[usize]) -> Result<PermGroup> {
        for &p in prefix {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        if self.chain.base().starts_with(prefix) {
            return Ok(self.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let chain = Chain::build_with_order(
            self.degree,
            &self.generators,
            prefix,
            &self.order,
            &mut rng,
            |r| self.chain.random_element(r),
        );
        Ok(Self::from_parts(self.degree, self.generators.clone(), chain))
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[point])
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let mut prefix: Vec<usize> = Vec::with_capacity(points.len());
        for &p in points {
            if !prefix.contains(&p) {
                prefix.push(p);
            }
        }
        let rechained = self.with_base_prefix(&prefix)?;
        Ok(self.subgroup_from_tail(&rechained.chain, prefix.len()))
    }

    /// `⟨self, g⟩`.
    pub fn extend(&self, g: &Permutation) -> Result<PermGroup> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        if self.chain.contains(g) {
            return Ok(self.clone());
        }
        let mut chain = self.chain.clone();
        chain.insert_generator(g);
        let mut gens = self.generators.clone();
        gens.push(g.clone());
        Ok(Self::from_parts(self.degree, gens, chain))
    }

    /// Subgroup generated by `self` and `extra`.
    pub fn closure(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut group = self.clone();
        for g in extra {
            group = group.extend(g)?;
        }
        Ok(group)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order <= other.order
            && self.generators.iter().all(|g| other.chain.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let gens: Vec<Permutation> = self.generators.iter().map(|x| x.conjugate_by(g)).collect();
        let mut chain = self.chain.clone();
        for level in &mut chain.levels {
            level.point = g.apply(level.point);
            level.gens = level.gens.iter().map(|x| x.conjugate_by(g)).collect();
            let mut orbit: Vec<usize> = level.orbit.iter().map(|&x| g.apply(x)).collect();
            let mut transversal = vec![None; self.degree];
            for &x in &level.orbit {
                let (u, inv) = level.transversal[x].as_ref().unwrap();
                transversal[g.apply(x)] = Some((u.conjugate_by(g), inv.conjugate_by(g)));
            }
            std::mem::swap(&mut level.orbit, &mut orbit);
            level.transversal = transversal;
        }
        Self::from_parts(self.degree, gens, chain)
    }

    /// True when `self` is normalized by every generator of `by`.
    pub fn is_normalized_by(&self, by: &[Permutation]) -> bool {
        by.iter().all(|g| {
            self.generators
                .iter()
                .all(|x| self.chain.contains(&x.conjugate_by(g)))
        })
    }

    /// Smallest normal subgroup of `self` containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<PermGroup> {
        for e in elements {
            if !self.contains(e)? {
                return Err(Error::NotInGroup);
            }
        }
        Ok(self.normal_closure_unchecked(elements))
    }

    pub(crate) fn normal_closure_unchecked(&self, elements: &[Permutation]) -> PermGroup {
        let mut closure = PermGroup::trivial(self.degree);
        let mut queue: Vec<Permutation> = Vec::new();
        for e in elements {
            if !closure.chain.contains(e) {
                closure = closure.extend(e).expect("degrees checked");
                queue.push(e.clone());
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i].clone();
            for g in &self.generators {
                let c = x.conjugate_by(g);
                if !closure.chain.contains(&c) {
                    closure = closure.extend(&c).expect("degrees checked");
                    queue.push(c);
                }
            }
            i += 1;
        }
        closure
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut commutators = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = commutator(a, b);
                if !c.is_identity() {
                    commutators.push(c);
                }
            }
        }
        self.normal_closure_unchecked(&commutators)
    }

    /// Derived series `G ≥ G' ≥ G'' ≥ ..` ending at the first repeat or the
    /// trivial group, capped at [`DERIVED_SERIES_CAP`] steps.
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        for _ in 0..DERIVED_SERIES_CAP {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = last.derived_subgroup();
            if next.order == last.order {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order == self.order
    }

    /// Derived length for soluble groups, `None` otherwise.
    pub fn derived_length(&self) -> Option<usize> {
        let series = self.derived_series();
        if series.last().unwrap().is_trivial() {
            Some(series.len() - 1)
        } else {
            None
        }
    }

    /// Permutation group induced on the invariant set `delta`, together with
    /// the kernel of that action.
    pub fn action_on_orbit(&self, delta: &[usize]) -> Result<(PermGroup, PermGroup)> {
        let mut set: Vec<usize> = delta.to_vec();
        set.sort_unstable();
        set.dedup();
        if let Some(&p) = set.iter().find(|&&p| p >= self.degree) {
            return Err(Error::PointOutOfRange {
                point: p,
                degree: self.degree,
            });
        }
        if set.is_empty() {
            return Err(Error::InvalidArgument("empty point set".into()));
        }
        let image_gens = self
            .generators
            .iter()
            .map(|g| g.restrict(&set))
            .collect::<Result<Vec<_>>>()?;
        let kernel = self.pointwise_stabilizer(&set)?;
        let image_order = &self.order / kernel.order();
        let image = PermGroup::with_known_order(set.len(), image_gens, &image_order)?;
        Ok((image, kernel))
    }

    /// Action on a block system (any invariant partition): image on the
    /// blocks and the kernel.
    pub fn action_on_blocks(&self, blocks: &[Vec<usize>]) -> Result<(PermGroup, PermGroup)> {
        let k = blocks.len();
        let mut block_of = vec![usize::MAX; self.degree];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= self.degree {
                    return Err(Error::PointOutOfRange {
                        point: x,
                        degree: self.degree,
                    });
                }
                block_of[x] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("blocks do not cover the domain".into()));
        }
        let mut block_gens = Vec::with_capacity(self.generators.len());
        let mut augmented = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut images = vec![0u32; k];
            for (i, b) in blocks.iter().enumerate() {
                let target = block_of[g.apply(b[0])];
                if b.iter().any(|&x| block_of[g.apply(x)] != target) {
                    return Err(Error::NotInvariant);
                }
                images[i] = target as u32;
            }
            let mut full: Vec<u32> = g.images().to_vec();
            full.extend(images.iter().map(|&t| (self.degree + t as usize) as u32));
            block_gens.push(Permutation::from_images(images)?);
            augmented.push(Permutation::from_images(full)?);
        }
        let total = self.degree + k;
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let mut pr = ProductReplacement::new(total, &augmented, &mut rng);
        let prefix: Vec<usize> = (self.degree..total).collect();
        let chain = Chain::build_with_order(total, &augmented, &prefix, &self.order, &mut rng, |r| {
            pr.next(r)
        });
        let tail = chain.tail(k);
        let kernel_order = tail.order();
        let own: Vec<usize> = (0..self.degree).collect();
        let kernel_gens = tail
            .strong_generators_from(0)
            .iter()
            .map(|g| g.restrict(&own))
            .collect::<Result<Vec<_>>>()?;
        let kernel = PermGroup::with_known_order(self.degree, kernel_gens, &kernel_order)?;
        let image = PermGroup::with_known_order(k, block_gens, &(&self.order / &kernel_order))?;
        Ok((image, kernel))
    }

    /// Transitivity on ordered k-tuples of distinct points.
    pub fn is_k_transitive(&self, k: usize) -> bool {
        if k > self.degree {
            return false;
        }
        if k == 0 {
            return true;
        }
        let prefix: Vec<usize> = (0..k).collect();
        let rechained = match self.with_base_prefix(&prefix) {
            Ok(g) => g,
            Err(_) => return false,
        };
        rechained
            .chain
            .levels
            .iter()
            .take(k)
            .enumerate()
            .all(|(i, l)| l.orbit.len() == self.degree - i)
    }

    /// Element orders present, sorted.
    pub fn element_order_set(&self, limit: u64) -> Result<BTreeSet<u64>> {
        Ok(self.elements(limit)?.iter().map(|g| g.order()).collect())
    }
}

pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    &(&(&a.inverse() * &b.inverse()) * a) * b
}

pub(crate) fn orbit_of(generators: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in generators {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit.sort_unstable();
    orbit
}

pub(crate) fn orbits_of(generators: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if seen[p] {
            continue;
        }
        let orbit = orbit_of(generators, degree, p);
        for &x in &orbit {
            seen[x] = true;
        }
        out.push(orbit);
    }
    out
}
