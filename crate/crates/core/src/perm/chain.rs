//! Stabilizer chains built by the Schreier–Sims algorithm.
//!
//! Level `i` stores the base point `b_i`, strong generators fixing
//! `b_0, .., b_{i-1}` pointwise, and a transversal `u_x` with `b_i^{u_x} = x`
//! for every `x` in the basic orbit.

use num_bigint::BigUint;
use rand::Rng;

use super::permutation::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub point: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `(u_x, u_x^-1)` indexed by point.
    pub transversal: Vec<Option<(Permutation, Permutation)>>,
    dirty: bool,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let id = Permutation::identity(degree);
        let mut transversal = vec![None; degree];
        transversal[point] = Some((id.clone(), id));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
            dirty: true,
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.gens.push(g);
        self.dirty = true;
        self.extend_orbit();
    }

    /// Closes the orbit under the current generators, keeping existing transversal entries.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for s in &self.gens {
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    let u = &self.transversal[x].as_ref().unwrap().0 * s;
                    let inv = u.inverse();
                    self.transversal[y] = Some((u, inv));
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    pub fn representative(&self, x: usize) -> Option<&Permutation> {
        self.transversal[x].as_ref().map(|(u, _)| u)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

/// Result of sifting: the residue and the level where sifting stopped
/// (`levels.len()` when every level was passed).
pub(crate) struct Sift {
    pub residue: Permutation,
    pub level: usize,
}

impl Chain {
    pub fn new(degree: usize, base_prefix: &[usize]) -> Self {
        Chain {
            degree,
            levels: base_prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.order_from(0)
    }

    pub fn order_from(&self, start: usize) -> BigUint {
        self.levels[start..]
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * l.orbit.len())
    }

    pub fn sift_from(&self, g: &Permutation, start: usize) -> Sift {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let x = h.apply(level.point);
            match &level.transversal[x] {
                Some((_, inv)) => h = &h * inv,
                None => return Sift { residue: h, level: i },
            }
        }
        Sift {
            residue: h,
            level: self.levels.len(),
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.sift_from(g, 0).residue.is_identity()
    }

    /// Adds `h` as a strong generator to levels `from..=to`, creating level `to` if needed.
    fn install(&mut self, h: &Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let point = h
                .smallest_moved_point()
                .expect("installing the identity as a strong generator");
            self.levels.push(Level::new(point, self.degree));
        }
        for level in &mut self.levels[from..=to] {
            level.add_generator(h.clone());
        }
    }

    /// Adds a generator of the group and restores the chain invariants.
    pub fn insert_generator(&mut self, g: &Permutation) {
        let sift = self.sift_from(g, 0);
        if sift.residue.is_identity() {
            return;
        }
        self.install(&sift.residue, 0, sift.level);
        self.complete(sift.level);
    }

    /// Deterministic Schreier–Sims completion, descending from `start`.
    fn complete(&mut self, start: usize) {
        let mut i = start.min(self.levels.len().saturating_sub(1));
        loop {
            if i < self.levels.len() && self.levels[i].dirty {
                if let Some((h, j)) = self.failing_schreier_generator(i) {
                    self.install(&h, i + 1, j);
                    i = j;
                    continue;
                }
                self.levels[i].dirty = false;
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    fn failing_schreier_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for &x in &level.orbit {
            let ux = &level.transversal[x].as_ref().unwrap().0;
            for s in &level.gens {
                let y = s.apply(x);
                let uy_inv = &level.transversal[y].as_ref().unwrap().1;
                let schreier = &(ux * s) * uy_inv;
                if schreier.is_identity() {
                    continue;
                }
                let sift = self.sift_from(&schreier, i + 1);
                if !sift.residue.is_identity() {
                    return Some((sift.residue, sift.level));
                }
            }
        }
        None
    }

    /// Deterministic construction with an optional base prefix; further base
    /// points are chosen as the smallest moved point of each new residue.
    pub fn build(degree: usize, generators: &[Permutation], base_prefix: &[usize]) -> Self {
        let mut chain = Chain::new(degree, base_prefix);
        for g in generators {
            chain.insert_generator(g);
        }
        chain.drop_trailing_trivial(base_prefix.len());
        chain
    }

    /// Randomized construction against a known target order.
    ///
    /// `sample` must return elements of the group; when the orbit product
    /// reaches `target` the chain is a complete stabilizer chain. If sampling
    /// stalls, falls back to the deterministic completion, so the result is
    /// always exact.
    pub fn build_with_order<R: Rng>(
        degree: usize,
        generators: &[Permutation],
        base_prefix: &[usize],
        target: &BigUint,
        rng: &mut R,
        mut sample: impl FnMut(&mut R) -> Permutation,
    ) -> Self {
        let mut chain = Chain::new(degree, base_prefix);
        for g in generators {
            chain.add_residue(g);
        }
        let mut misses = 0;
        while &chain.order() < target && misses < 64 {
            let g = sample(rng);
            if chain.add_residue(&g) {
                misses = 0;
            } else {
                misses += 1;
            }
        }
        if &chain.order() != target {
            for level in &mut chain.levels {
                level.dirty = true;
            }
            let top = chain.levels.len().saturating_sub(1);
            chain.complete(top);
        } else {
            for level in &mut chain.levels {
                level.dirty = false;
            }
        }
        chain.drop_trailing_trivial(base_prefix.len());
        chain
    }

    /// Sifts and installs the residue without running completion.
    fn add_residue(&mut self, g: &Permutation) -> bool {
        let sift = self.sift_from(g, 0);
        if sift.residue.is_identity() {
            return false;
        }
        self.install(&sift.residue, 0, sift.level);
        true
    }

    fn drop_trailing_trivial(&mut self, keep: usize) {
        while self.levels.len() > keep && self.levels.last().is_some_and(|l| l.orbit.len() == 1) {
            self.levels.pop();
        }
    }

    /// Uniformly random element: `u_k ... u_1` with `u_i` drawn from level `i`.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let x = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = &g * level.representative(x).unwrap();
        }
        g
    }

    /// Tail of the chain from `start` as a chain in its own right.
    pub fn tail(&self, start: usize) -> Chain {
        Chain {
            degree: self.degree,
            levels: self.levels[start..].to_vec(),
        }
    }

    /// Strong generators of the whole group (level 0 generators), or of the tail.
    pub fn strong_generators_from(&self, start: usize) -> Vec<Permutation> {
        self.levels
            .get(start)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// Calls `f` on every element, in transversal order.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation) -> bool) {
        fn rec(
            levels: &[Level],
            acc: &Permutation,
            f: &mut dyn FnMut(&Permutation) -> bool,
        ) -> bool {
            match levels.split_last() {
                None => f(acc),
                Some((last, rest)) => {
                    for &x in &last.orbit {
                        let next = acc * last.representative(x).unwrap();
                        if !rec(rest, &next, f) {
                            return false;
                        }
                    }
                    true
                }
            }
        }
        let id = Permutation::identity(self.degree);
        rec(&self.levels, &id, &mut f);
    }
}
