use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chain::StabChain;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Seed used when the caller does not pick one. Results never depend on it.
pub const DEFAULT_SEED: u64 = 0x5eed_a2c5;

struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

/// A permutation group given by generators, with a verified stabilizer chain.
///
/// Immutable after construction; clones share the chain.
#[derive(Clone)]
pub struct PermGroup(Arc<Inner>);

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order().to_string())
            .field("generators", &self.generators())
            .finish()
    }
}

fn check_degrees(degree: usize, gens: &[Permutation]) -> Result<()> {
    for g in gens {
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
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_seed(degree, generators, DEFAULT_SEED)
    }

    /// Degree taken from the first generator.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::invalid("empty generator list needs an explicit degree"))?;
        Self::new(degree, generators)
    }

    pub fn with_seed(degree: usize, generators: Vec<Permutation>, seed: u64) -> Result<Self> {
        Self::build(degree, generators, &[], None, seed)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    /// Build with a prescribed base prefix and, optionally, an order known in
    /// advance (which lets construction stop as soon as the chain reaches it).
    pub(crate) fn build(
        degree: usize,
        generators: Vec<Permutation>,
        base_prefix: &[usize],
        known_order: Option<&BigUint>,
        seed: u64,
    ) -> Result<Self> {
        check_degrees(degree, &generators)?;
        if let Some(&p) = base_prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::PointOutOfRange { point: p, degree });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chain = StabChain::build(degree, &generators, base_prefix, known_order, &mut rng);
        let order = chain.order();
        if let Some(n) = known_order {
            if &order != n {
                return Err(Error::Internal(format!(
                    "chain order {order} disagrees with known order {n}"
                )));
            }
        }
        Ok(PermGroup(Arc::new(Inner {
            degree,
            generators,
            chain,
            order,
        })))
    }

    pub(crate) fn from_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let order = chain.order();
        PermGroup(Arc::new(Inner {
            degree,
            generators,
            chain,
            order,
        }))
    }

    pub(crate) fn chain(&self) -> &StabChain {
        &self.0.chain
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    /// Order as `u64`, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.0.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.order.is_one()
    }

    pub fn base(&self) -> Vec<usize> {
        self.0.chain.base()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.0.chain.strong_generators()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: x.degree(),
            });
        }
        Ok(self.0.chain.contains(x))
    }

    /// Membership for callers that already know the degrees agree.
    pub(crate) fn has(&self, x: &Permutation) -> bool {
        self.0.chain.contains(x)
    }

    pub fn contains_group(&self, other: &PermGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same set of elements.
    pub fn same_elements(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.order() == other.order() && self.contains_group(other)?)
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree() {
            Err(Error::PointOutOfRange {
                point,
                degree: self.degree(),
            })
        } else {
            Ok(())
        }
    }

    /// Orbit of `point`, in discovery order.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        Ok(orbit_under(self.generators(), self.degree(), point))
    }

    /// The orbit partition, each orbit sorted, orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for p in 0..self.degree() {
            if seen[p] {
                continue;
            }
            let mut orb = orbit_under(self.generators(), self.degree(), p);
            for &q in &orb {
                seen[q] = true;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() <= 1 || orbit_under(self.generators(), self.degree(), 0).len() == self.degree()
    }

    /// Pointwise stabilizer of `points`, read off a chain whose base starts with them.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &p in points {
            self.check_point(p)?;
        }
        if points.is_empty() {
            return Ok(self.clone());
        }
        let rebased = self.rebase(points)?;
        let tail = rebased.chain().tail(points.len());
        let gens = tail.strong_generators().to_vec();
        Ok(PermGroup::from_chain(self.degree(), gens, tail))
    }

    /// Stabilizer of a single point.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[point])
    }

    /// Same group with a chain whose base begins with `prefix`.
    pub fn rebase(&self, prefix: &[usize]) -> Result<PermGroup> {
        if self.base().starts_with(prefix) {
            return Ok(self.clone());
        }
        PermGroup::build(
            self.degree(),
            self.generators().to_vec(),
            prefix,
            Some(self.order()),
            DEFAULT_SEED,
        )
    }

    /// Every element, in chain order. Fails when the order exceeds `bound`.
    pub fn elements(&self, bound: u64) -> Result<ElementIter<'_>> {
        let n = self.order_u64().filter(|&n| n <= bound).ok_or_else(|| {
            Error::limit("element enumeration", bound, self.order())
        })?;
        Ok(ElementIter {
            chain: self.chain(),
            coords: vec![0; self.chain().levels.len()],
            remaining: n,
        })
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Permutation {
        self.chain().random_element(rng)
    }

    /// `<self, extra>`.
    pub fn join_with(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators().to_vec();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree(), gens)
    }

    /// `x^-1 G x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Result<PermGroup> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: x.degree(),
            });
        }
        let gens = self.generators().iter().map(|g| g.conjugate_by(x)).collect();
        PermGroup::build(self.degree(), gens, &[], Some(self.order()), DEFAULT_SEED)
    }

    /// Whether `x` normalizes this group.
    pub fn is_normalized_by(&self, x: &Permutation) -> Result<bool> {
        for g in self.generators() {
            if !self.contains(&g.conjugate_by(x))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether this group is normal in `other` (and contained in it).
    pub fn is_normal_in(&self, other: &PermGroup) -> Result<bool> {
        if !other.contains_group(self)? {
            return Ok(false);
        }
        for x in other.generators() {
            if !self.is_normalized_by(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest normal subgroup of `self` containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = elements.iter().filter(|x| !x.is_identity()).cloned().collect();
        let mut current = PermGroup::new(self.degree(), gens.clone())?;
        loop {
            let mut added = false;
            let snapshot = gens.clone();
            for y in &snapshot {
                for g in self.generators() {
                    let c = y.conjugate_by(g);
                    if !current.has(&c) {
                        gens.push(c);
                        current = PermGroup::new(self.degree(), gens.clone())?;
                        added = true;
                    }
                }
            }
            if !added {
                return Ok(current);
            }
        }
    }

    /// Derived subgroup, as the normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Generators printed in 1-indexed cycle notation.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators().iter().map(|g| g.to_cycle_string(true)).collect()
    }

    /// Sorted orbit lengths; a cheap conjugacy invariant.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }

    /// Prime divisors of the order.
    pub fn prime_set(&self) -> BTreeSet<BigUint> {
        crate::numtheory::prime_set(self.order())
    }
}

pub(crate) fn orbit_under(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut out = vec![point];
    seen[point] = true;
    let mut queue = VecDeque::from([point]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                out.push(q);
                queue.push_back(q);
            }
        }
    }
    out
}

/// Iterator over all elements of a group via its chain.
pub struct ElementIter<'a> {
    chain: &'a StabChain,
    coords: Vec<usize>,
    remaining: u64,
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let g = self.chain.element_at(&self.coords);
        self.remaining -= 1;
        for (c, level) in self.coords.iter_mut().zip(&self.chain.levels).rev() {
            *c += 1;
            if *c < level.orbit.len() {
                break;
            }
            *c = 0;
        }
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}
