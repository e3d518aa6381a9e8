//! Base and strong generating set.
//!
//! Construction runs a randomized Schreier-Sims pass (sifting random elements
//! drawn by product replacement) and then a deterministic pass that sifts every
//! Schreier generator at every level. The chain is complete once the second
//! pass finds nothing to add.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::permutation::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `transversal[p]` maps `base` to `p`.
    pub transversal: Vec<Option<Permutation>>,
    pub inv_transversal: Vec<Option<Permutation>>,
    /// Position of each point in `orbit`.
    pub orbit_pos: Vec<u32>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inv_transversal: vec![None; degree],
            orbit_pos: vec![u32::MAX; degree],
        };
        level.reset_orbit(degree);
        level
    }

    fn reset_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.inv_transversal = vec![None; degree];
        self.orbit_pos = vec![u32::MAX; degree];
        self.orbit.clear();
        let id = Permutation::identity(degree);
        self.transversal[self.base] = Some(id.clone());
        self.inv_transversal[self.base] = Some(id);
        self.orbit_pos[self.base] = 0;
        self.orbit.push(self.base);
        self.extend_orbit(0);
    }

    /// Close the orbit under all generators, starting the scan at `from`.
    fn extend_orbit(&mut self, from: usize) {
        let mut i = from;
        // Points before `from` have only been closed under the older generators;
        // rescan them too when `from` is 0.
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for s in &self.gens {
                let q = s.apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap().compose(s);
                    self.inv_transversal[q] = Some(u.inverse());
                    self.transversal[q] = Some(u);
                    self.orbit_pos[q] = self.orbit.len() as u32;
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.gens.push(g);
        self.extend_orbit(0);
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Trivial chain carrying the requested base prefix.
    fn empty(degree: usize, base_prefix: &[usize]) -> Self {
        StabChain {
            degree,
            levels: base_prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Sift `x` starting at `start`. Returns the residue and the level at which
    /// sifting stopped (`levels.len()` when it passed every level).
    pub fn sift_from(&self, x: &Permutation, start: usize) -> (Permutation, usize) {
        let mut g = x.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let p = g.apply(level.base);
            match &level.inv_transversal[p] {
                Some(uinv) => g = g.compose(uinv),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        let (r, _) = self.sift_from(x, 0);
        r.is_identity()
    }

    /// The element with the given coordinates: `u_{k-1} * ... * u_0`.
    pub fn element_at(&self, coords: &[usize]) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for (level, &c) in self.levels.iter().zip(coords).rev() {
            let u = level.transversal[level.orbit[c]].as_ref().unwrap();
            g = g.compose(u);
        }
        g
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Permutation {
        let coords: Vec<usize> = self.levels.iter().map(|l| rng.gen_range(0..l.orbit.len())).collect();
        self.element_at(&coords)
    }

    /// Insert a residue that dropped out at level `j`. Extends the base when
    /// `j` equals the current length.
    fn insert_residue(&mut self, h: Permutation, j: usize) {
        if j == self.levels.len() {
            let moved = (0..self.degree)
                .find(|&p| h.apply(p) != p)
                .expect("residue must be nontrivial");
            self.levels.push(Level::new(moved, self.degree));
        }
        for level in &mut self.levels[..=j] {
            level.add_generator(h.clone());
        }
    }

    /// Deterministic Schreier-Sims completion.
    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            if let Some((h, j)) = self.find_failing_schreier_generator(i) {
                self.insert_residue(h, j);
                // Restart at the level that received the new generator.
                i = j;
                continue;
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    fn find_failing_schreier_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for &p in &level.orbit {
            let up = level.transversal[p].as_ref().unwrap();
            for s in &level.gens {
                let q = s.apply(p);
                let ups = up.compose(s);
                let uq_inv = level.inv_transversal[q].as_ref().unwrap();
                let sg = ups.compose(uq_inv);
                if sg.is_identity() {
                    continue;
                }
                let (h, j) = self.sift_from(&sg, i + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Build a complete chain for `<gens>` whose base starts with `base_prefix`.
    pub fn build(
        degree: usize,
        gens: &[Permutation],
        base_prefix: &[usize],
        known_order: Option<&BigUint>,
        rng: &mut ChaCha8Rng,
    ) -> StabChain {
        let mut chain = StabChain::empty(degree, base_prefix);
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            let (h, j) = chain.sift_from(g, 0);
            if !h.is_identity() {
                chain.insert_residue(h, j);
            }
        }

        // Randomized phase.
        let mut pr = ProductReplacement::new(&gens, rng);
        let mut streak = 0;
        while streak < 12 {
            if known_order.is_some_and(|n| &chain.order() == n) {
                return chain;
            }
            let r = pr.next(rng);
            let (h, j) = chain.sift_from(&r, 0);
            if h.is_identity() {
                streak += 1;
            } else {
                streak = 0;
                chain.insert_residue(h, j);
            }
        }
        // A chain never overcounts, so reaching a known order certifies it.
        if known_order.is_some_and(|n| &chain.order() == n) {
            return chain;
        }
        chain.complete();
        chain
    }

    /// Chain of the stabilizer of the first `k` base points.
    pub fn tail(&self, k: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[k..].to_vec(),
        }
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }
}

/// Product replacement random element generator.
struct ProductReplacement {
    state: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    fn new(gens: &[Permutation], rng: &mut ChaCha8Rng) -> Self {
        let mut state: Vec<Permutation> = gens.to_vec();
        while state.len() < 10 {
            let g = gens[state.len() % gens.len()].clone();
            state.push(g);
        }
        let acc = Permutation::identity(gens[0].degree());
        let mut pr = ProductReplacement { state, acc };
        for _ in 0..50 {
            pr.next(rng);
        }
        pr
    }

    fn next(&mut self, rng: &mut ChaCha8Rng) -> Permutation {
        let n = self.state.len();
        let s = rng.gen_range(0..n);
        let mut t = rng.gen_range(0..n - 1);
        if t >= s {
            t += 1;
        }
        let other = if rng.gen_bool(0.5) {
            self.state[t].clone()
        } else {
            self.state[t].inverse()
        };
        self.state[s] = if rng.gen_bool(0.5) {
            self.state[s].compose(&other)
        } else {
            other.compose(&self.state[s])
        };
        self.acc = self.acc.compose(&self.state[s]);
        self.acc.clone()
    }
}
