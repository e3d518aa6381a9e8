//! Action of a group on the right cosets of a subgroup.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::group::PermGroup;
use super::permutation::Permutation;
use super::subgroup::Subgroup;
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// `G` acting by right multiplication on the right cosets `Hx`.
///
/// Point 0 is `H` itself. Each coset is stored through a canonical
/// representative: the element of `Hx` whose images of the base points of `H`
/// are lexicographically least.
#[derive(Clone, Debug)]
pub struct CosetAction {
    group: PermGroup,
    subgroup: Subgroup,
    reps: Vec<Permutation>,
    lookup: HashMap<Vec<u32>, usize>,
    key_base: Vec<usize>,
    image: PermGroup,
}

impl CosetAction {
    pub fn new(g: &PermGroup, h: &Subgroup, bounds: &Bounds) -> Result<Self> {
        if h.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                expected: g.degree(),
                found: h.degree(),
            });
        }
        if !g.contains_group(h.group())? {
            return Err(Error::invalid("subgroup does not lie in the group"));
        }
        let index: BigUint = g.order() / h.order();
        let n = index
            .to_u64()
            .filter(|&n| n <= bounds.points)
            .ok_or_else(|| Error::limit("coset action points", bounds.points, &index))? as usize;

        let key_base = g.base();
        let mut action = CosetAction {
            group: g.clone(),
            subgroup: h.clone(),
            reps: Vec::with_capacity(n),
            lookup: HashMap::with_capacity(n),
            key_base,
            image: PermGroup::trivial(n.max(1)),
        };
        let first = action.canonical(&g.identity());
        action.lookup.insert(action.key(&first), 0);
        action.reps.push(first);

        let gens = g.generators();
        let mut images: Vec<Vec<usize>> = vec![Vec::with_capacity(n); gens.len()];
        let mut i = 0;
        while i < action.reps.len() {
            for (s, img) in gens.iter().zip(images.iter_mut()) {
                let c = action.canonical(&action.reps[i].compose(s));
                let key = action.key(&c);
                let j = match action.lookup.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = action.reps.len();
                        action.lookup.insert(key, j);
                        action.reps.push(c);
                        j
                    }
                };
                img.push(j);
            }
            i += 1;
        }
        if action.reps.len() != n {
            return Err(Error::Internal(format!(
                "found {} cosets, expected index {n}",
                action.reps.len()
            )));
        }
        let perms = images
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>>>()?;
        action.image = PermGroup::new(n, perms)?;
        Ok(action)
    }

    fn key(&self, x: &Permutation) -> Vec<u32> {
        self.key_base.iter().map(|&b| x.apply(b) as u32).collect()
    }

    /// Canonical representative of the coset `Hx`.
    fn canonical(&self, x: &Permutation) -> Permutation {
        let mut c = x.clone();
        for level in &self.subgroup.chain().levels {
            let best = level
                .orbit
                .iter()
                .copied()
                .min_by_key(|&d| c.apply(d))
                .expect("orbit contains its base point");
            if best != level.base {
                c = level.transversal[best].as_ref().unwrap().compose(&c);
            }
        }
        c
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Number of cosets.
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// The permutation group induced on the cosets.
    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    /// Canonical representative of coset `i`.
    pub fn representative(&self, i: usize) -> &Permutation {
        &self.reps[i]
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    /// Index of the coset `Hx`.
    pub fn point_of(&self, x: &Permutation) -> Result<usize> {
        if !self.group.contains(x)? {
            return Err(Error::invalid(format!("{x} is not in the group")));
        }
        Ok(self.lookup[&self.key(&self.canonical(x))])
    }

    /// The permutation of cosets induced by `x`.
    pub fn act(&self, x: &Permutation) -> Result<Permutation> {
        if !self.group.contains(x)? {
            return Err(Error::invalid(format!("{x} is not in the group")));
        }
        let images: Vec<usize> = self
            .reps
            .iter()
            .map(|r| self.lookup[&self.key(&self.canonical(&r.compose(x)))])
            .collect();
        Permutation::from_images(images)
    }

    /// Image of a subgroup of `G` in the coset action.
    pub fn image_of(&self, k: &PermGroup) -> Result<PermGroup> {
        let gens = k
            .generators()
            .iter()
            .map(|x| self.act(x))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree(), gens)
    }

    /// Order of the kernel of the action (the core of `H` in `G`).
    pub fn kernel_order(&self) -> BigUint {
        self.group.order() / self.image.order()
    }

    pub fn is_faithful(&self) -> bool {
        self.image.order() == self.group.order()
    }
}

/// Convenience wrapper: the action of `g` on the cosets of `h`.
pub fn coset_action(g: &PermGroup, h: &Subgroup, bounds: &Bounds) -> Result<CosetAction> {
    CosetAction::new(g, h, bounds)
}
