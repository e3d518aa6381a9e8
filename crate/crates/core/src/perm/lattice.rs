//! Small groups as Cayley tables: subgroup classes, abstract isomorphism.
//!
//! Elements are indexed in lexicographic order of their image vectors, so every
//! result here is independent of how the stabilizer chain was built.

use std::collections::{BTreeMap, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;

use super::group::PermGroup;
use super::permutation::Permutation;
use super::subgroup::Subgroup;
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// Multiplication table of a small permutation group.
pub struct CayleyTable {
    group: PermGroup,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    identity: u32,
}

/// A subgroup of a [`CayleyTable`], as a set of element indices.
pub type ElementSet = FixedBitSet;

impl CayleyTable {
    pub fn new(group: &PermGroup, max_order: u64) -> Result<Self> {
        let mut elements: Vec<Permutation> = group.elements(max_order)?.collect();
        elements.sort();
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.compose(b)];
            }
        }
        let identity = index[&group.identity()];
        let mut inv = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == identity {
                    inv[i] = j as u32;
                    break;
                }
            }
        }
        let mut elem_order = vec![0u32; n];
        for i in 0..n {
            let mut k = 1;
            let mut x = i as u32;
            while x != identity {
                x = mul[x as usize * n + i];
                k += 1;
            }
            elem_order[i] = k;
        }
        Ok(CayleyTable {
            group: group.clone(),
            elements,
            index,
            mul,
            inv,
            elem_order,
            identity,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn conj(&self, a: u32, by: u32) -> u32 {
        self.mul(self.mul(self.inv(by), a), by)
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, x: &Permutation) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn element_order(&self, i: u32) -> u32 {
        self.elem_order[i as usize]
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn empty_set(&self) -> ElementSet {
        FixedBitSet::with_capacity(self.len())
    }

    /// A small generating set, picked greedily (largest element order first).
    pub fn generating_set(&self, set: &ElementSet) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut current = self.empty_set();
        current.insert(self.identity as usize);
        // Prefer elements of large order; ties by index.
        let mut candidates: Vec<u32> = set.ones().map(|i| i as u32).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order[x as usize]), x));
        for x in candidates {
            if current.contains(x as usize) {
                continue;
            }
            gens.push(x);
            current = self.closure(&gens);
            if current.count_ones(..) == set.count_ones(..) {
                break;
            }
        }
        gens
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> ElementSet {
        let mut set = self.empty_set();
        set.insert(self.identity as usize);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.contains(y as usize) {
                    set.insert(y as usize);
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Conjugate of an element set by element `by`.
    pub fn conjugate_set(&self, set: &ElementSet, by: u32) -> ElementSet {
        let mut out = self.empty_set();
        for i in set.ones() {
            out.insert(self.conj(i as u32, by) as usize);
        }
        out
    }

    /// Convert an element set to a permutation group.
    pub fn to_group(&self, set: &ElementSet) -> Result<PermGroup> {
        let gens = self
            .generating_set(set)
            .into_iter()
            .map(|i| self.elements[i as usize].clone())
            .collect();
        PermGroup::build(
            self.group.degree(),
            gens,
            &[],
            Some(&BigUint::from(set.count_ones(..))),
            super::group::DEFAULT_SEED,
        )
    }

    pub fn to_subgroup(&self, set: &ElementSet) -> Result<Subgroup> {
        Ok(Subgroup::from_parts_unchecked(self.to_group(set)?, &self.group))
    }

    /// Element set of a subgroup of the tabulated group.
    pub fn set_of(&self, h: &PermGroup, bound: u64) -> Result<ElementSet> {
        let mut set = self.empty_set();
        for x in h.elements(bound)? {
            let i = self
                .index_of(&x)
                .ok_or_else(|| Error::invalid("subgroup element outside the tabulated group"))?;
            set.insert(i as usize);
        }
        Ok(set)
    }

    /// Histogram of element orders.
    pub fn order_profile(&self, set: &ElementSet) -> BTreeMap<u32, usize> {
        let mut hist = BTreeMap::new();
        for i in set.ones() {
            *hist.entry(self.elem_order[i]).or_insert(0) += 1;
        }
        hist
    }

    /// Derived subgroup of an element set.
    pub fn derived(&self, set: &ElementSet) -> ElementSet {
        let elems: Vec<u32> = set.ones().map(|i| i as u32).collect();
        let mut comms = HashSet::new();
        for &a in &elems {
            for &b in &elems {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comms.insert(c);
            }
        }
        let gens: Vec<u32> = comms.into_iter().collect();
        self.closure(&gens)
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Least member (by element indices) of the class.
    pub representative: ElementSet,
    pub order: usize,
    /// Number of conjugates.
    pub size: usize,
    /// Every member of the class.
    pub members: Vec<ElementSet>,
}

/// Conjugacy classes of subgroups of a small group.
pub struct SubgroupLattice {
    pub table: CayleyTable,
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupLattice {
    /// All classes, found by extending class representatives with cyclic
    /// subgroups of prime-power order until nothing new appears.
    pub fn new(group: &PermGroup, bounds: &Bounds) -> Result<Self> {
        let order = group
            .order_u64()
            .filter(|&n| n <= bounds.subgroups)
            .ok_or_else(|| Error::limit("subgroup enumeration", bounds.subgroups, group.order()))?;
        let table = CayleyTable::new(group, order)?;
        let gens: Vec<u32> = group
            .generators()
            .iter()
            .map(|g| table.index_of(g).expect("generator in table"))
            .collect();

        // Cyclic subgroups of prime-power order, one per subgroup.
        let mut zuppos: Vec<(u32, ElementSet)> = Vec::new();
        let mut seen_cyclic: HashSet<ElementSet> = HashSet::new();
        for i in 0..table.len() as u32 {
            let o = table.element_order(i);
            if o == 1 || crate::numtheory::prime_set_u64(o as u64).len() != 1 {
                continue;
            }
            let c = table.closure(&[i]);
            if seen_cyclic.insert(c.clone()) {
                zuppos.push((i, c));
            }
        }

        let mut member_of: HashMap<ElementSet, usize> = HashMap::new();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        let add_class = |set: ElementSet, classes: &mut Vec<SubgroupClass>, member_of: &mut HashMap<ElementSet, usize>| -> bool {
            if member_of.contains_key(&set) {
                return false;
            }
            let id = classes.len();
            let mut members = vec![set.clone()];
            member_of.insert(set.clone(), id);
            let mut k = 0;
            while k < members.len() {
                for &g in &gens {
                    let c = table.conjugate_set(&members[k], g);
                    if !member_of.contains_key(&c) {
                        member_of.insert(c.clone(), id);
                        members.push(c);
                    }
                }
                k += 1;
            }
            members.sort_by(|a, b| a.ones().cmp(b.ones()));
            classes.push(SubgroupClass {
                representative: members[0].clone(),
                order: set.count_ones(..),
                size: members.len(),
                members,
            });
            true
        };

        let mut trivial = table.empty_set();
        trivial.insert(table.identity() as usize);
        add_class(trivial, &mut classes, &mut member_of);
        let mut next = 0;
        while next < classes.len() {
            let rep = classes[next].representative.clone();
            let mut rep_gens = table.generating_set(&rep);
            for (z, zset) in &zuppos {
                if zset.is_subset(&rep) {
                    continue;
                }
                rep_gens.push(*z);
                let joined = table.closure(&rep_gens);
                rep_gens.pop();
                add_class(joined, &mut classes, &mut member_of);
            }
            next += 1;
        }
        classes.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then_with(|| a.representative.ones().cmp(b.representative.ones()))
        });
        Ok(SubgroupLattice { table, classes })
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.size).sum()
    }

    /// Index of the class containing `set`.
    pub fn class_of(&self, set: &ElementSet) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(set))
    }

    pub fn representatives(&self) -> Result<Vec<Subgroup>> {
        self.classes
            .iter()
            .map(|c| self.table.to_subgroup(&c.representative))
            .collect()
    }
}

/// One representative per conjugacy class of subgroups, sorted by order and
/// then by element indices.
pub fn enumerate_subgroups(h: &PermGroup, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    SubgroupLattice::new(h, bounds)?.representatives()
}

/// Cheap isomorphism invariants of a subgroup given as an element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupProfile {
    pub order: usize,
    pub element_orders: BTreeMap<u32, usize>,
    pub derived_order: usize,
}

impl CayleyTable {
    pub fn profile(&self, set: &ElementSet) -> GroupProfile {
        GroupProfile {
            order: set.count_ones(..),
            element_orders: self.order_profile(set),
            derived_order: self.derived(set).count_ones(..),
        }
    }

    /// An explicit isomorphism from `a` onto `b` (both subgroups of this table),
    /// as a map on element indices, or `None` when none exists.
    pub fn find_isomorphism(&self, a: &ElementSet, b: &ElementSet) -> Option<HashMap<u32, u32>> {
        if a.count_ones(..) != b.count_ones(..) {
            return None;
        }
        let agens = self.generating_set(a);
        let bel: Vec<u32> = b.ones().map(|i| i as u32).collect();
        let mut images: Vec<u32> = Vec::with_capacity(agens.len());
        self.iso_backtrack(&agens, &bel, b, &mut images)
    }

    fn iso_backtrack(
        &self,
        agens: &[u32],
        bel: &[u32],
        b: &ElementSet,
        images: &mut Vec<u32>,
    ) -> Option<HashMap<u32, u32>> {
        let k = images.len();
        if k == agens.len() {
            return self.extend_hom(agens, images, b);
        }
        let want = self.element_order(agens[k]);
        for &y in bel {
            if self.element_order(y) != want {
                continue;
            }
            // Orders of pairwise products must match too.
            let consistent = (0..k).all(|i| {
                self.element_order(self.mul(agens[i], agens[k])) == self.element_order(self.mul(images[i], y))
            });
            if !consistent {
                continue;
            }
            images.push(y);
            if let Some(m) = self.iso_backtrack(agens, bel, b, images) {
                return Some(m);
            }
            images.pop();
        }
        None
    }

    /// Extend generator images to a homomorphism on `<agens>`; succeed when it
    /// is well defined and injective with image inside `b`.
    fn extend_hom(&self, agens: &[u32], images: &[u32], b: &ElementSet) -> Option<HashMap<u32, u32>> {
        let mut map: HashMap<u32, u32> = HashMap::new();
        map.insert(self.identity, self.identity);
        let mut queue = vec![self.identity];
        let mut used = HashSet::from([self.identity]);
        while let Some(x) = queue.pop() {
            let fx = map[&x];
            for (&g, &gy) in agens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = self.mul(fx, gy);
                match map.get(&y) {
                    Some(&v) if v != fy => return None,
                    Some(_) => {}
                    None => {
                        if !b.contains(fy as usize) || !used.insert(fy) {
                            return None;
                        }
                        map.insert(y, fy);
                        queue.push(y);
                    }
                }
            }
        }
        Some(map)
    }
}
