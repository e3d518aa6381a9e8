use std::ops::Deref;

use crate::bounds::Bounds;
use crate::error::{Error, Result};

use super::group::PermGroup;
use super::permutation::Permutation;

/// A permutation group together with the group it was taken inside.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: PermGroup,
    ambient: PermGroup,
}

impl Deref for Subgroup {
    type Target = PermGroup;

    fn deref(&self) -> &PermGroup {
        &self.group
    }
}

impl Subgroup {
    /// Checks that every generator of `group` lies in `ambient`.
    pub fn new(group: PermGroup, ambient: &PermGroup) -> Result<Self> {
        if group.degree() != ambient.degree() {
            return Err(Error::DegreeMismatch {
                expected: ambient.degree(),
                found: group.degree(),
            });
        }
        for g in group.generators() {
            if !ambient.has(g) {
                return Err(Error::invalid(format!(
                    "generator {g} does not lie in the ambient group"
                )));
            }
        }
        Ok(Subgroup {
            group,
            ambient: ambient.clone(),
        })
    }

    pub fn generated_by(ambient: &PermGroup, gens: Vec<Permutation>) -> Result<Self> {
        Subgroup::new(PermGroup::new(ambient.degree(), gens)?, ambient)
    }

    /// The whole ambient group as a subgroup of itself.
    pub fn whole(ambient: &PermGroup) -> Self {
        Subgroup {
            group: ambient.clone(),
            ambient: ambient.clone(),
        }
    }

    pub fn trivial(ambient: &PermGroup) -> Self {
        Subgroup {
            group: PermGroup::trivial(ambient.degree()),
            ambient: ambient.clone(),
        }
    }

    pub(crate) fn from_parts_unchecked(group: PermGroup, ambient: &PermGroup) -> Self {
        Subgroup {
            group,
            ambient: ambient.clone(),
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn into_group(self) -> PermGroup {
        self.group
    }

    /// `[ambient : self]`, exact.
    pub fn index(&self) -> num_bigint::BigUint {
        self.ambient.order() / self.group.order()
    }

    /// View inside a different ambient group (checked).
    pub fn within(&self, ambient: &PermGroup) -> Result<Subgroup> {
        Subgroup::new(self.group.clone(), ambient)
    }

    /// `H^x = x^-1 H x`; `x` must lie in the ambient group.
    pub fn conjugate(&self, x: &Permutation) -> Result<Subgroup> {
        if !self.ambient.contains(x)? {
            return Err(Error::invalid(format!("{x} is not in the ambient group")));
        }
        Ok(Subgroup {
            group: self.group.conjugate_by(x)?,
            ambient: self.ambient.clone(),
        })
    }

    pub fn same_elements(&self, other: &Subgroup) -> Result<bool> {
        self.group.same_elements(&other.group)
    }
}

/// Subgroup generated by the elements of `candidates` accepted by `keep`,
/// grown one generator at a time.
pub(crate) fn collect_subgroup<I>(degree: usize, candidates: I, mut keep: impl FnMut(&Permutation) -> bool) -> Result<PermGroup>
where
    I: Iterator<Item = Permutation>,
{
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(degree);
    for x in candidates {
        if current.has(&x) || !keep(&x) {
            continue;
        }
        gens.push(x);
        current = PermGroup::new(degree, gens.clone())?;
    }
    Ok(current)
}

/// `H ∩ K`, by enumerating the smaller factor and sifting against the larger.
pub fn intersection(h: &Subgroup, k: &Subgroup, bounds: &Bounds) -> Result<Subgroup> {
    if h.degree() != k.degree() {
        return Err(Error::DegreeMismatch {
            expected: h.degree(),
            found: k.degree(),
        });
    }
    let (small, large) = if h.order() <= k.order() { (h, k) } else { (k, h) };
    if large.contains_group(small.group())? {
        return Ok(Subgroup::from_parts_unchecked(small.group().clone(), h.ambient()));
    }
    let elements = small.elements(bounds.elements)?;
    let group = collect_subgroup(h.degree(), elements, |x| large.has(x))?;
    Ok(Subgroup::from_parts_unchecked(group, h.ambient()))
}

/// Some `x` in `g` with `H^x = K`, or `None` when none exists.
///
/// Exhaustive over the elements of `g` (bounded); cheap invariants (order,
/// orbit lengths) rule out most negative cases before enumeration.
pub fn are_conjugate_subgroups(
    g: &PermGroup,
    h: &Subgroup,
    k: &Subgroup,
    bounds: &Bounds,
) -> Result<Option<Permutation>> {
    if h.degree() != g.degree() || k.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: h.degree().max(k.degree()),
        });
    }
    if h.order() != k.order() {
        return Ok(None);
    }
    if h.same_elements(k)? {
        return Ok(Some(g.identity()));
    }
    if h.orbit_lengths() != k.orbit_lengths() {
        return Ok(None);
    }
    let hgens = h.generators();
    for x in g.elements(bounds.elements)? {
        let mut ok = true;
        for hg in hgens {
            if !k.has(&hg.conjugate_by(&x)) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// `N_G(H)`, by enumerating `G` (bounded).
pub fn normalizer(g: &PermGroup, h: &PermGroup, bounds: &Bounds) -> Result<Subgroup> {
    if !g.contains_group(h)? {
        return Err(Error::invalid("subgroup does not lie in the group"));
    }
    let mut gens: Vec<Permutation> = h.generators().to_vec();
    let mut current = h.clone();
    for x in g.elements(bounds.elements)? {
        if current.has(&x) || !h.is_normalized_by(&x)? {
            continue;
        }
        gens.push(x);
        current = PermGroup::new(g.degree(), gens.clone())?;
        if current.order() == g.order() {
            break;
        }
    }
    Ok(Subgroup::from_parts_unchecked(current, g))
}

/// Stabilizer of the set `points` (as a set), by enumerating `G` (bounded).
pub fn setwise_stabilizer(g: &PermGroup, points: &[usize], bounds: &Bounds) -> Result<Subgroup> {
    let n = g.degree();
    if let Some(&p) = points.iter().find(|&&p| p >= n) {
        return Err(Error::PointOutOfRange { point: p, degree: n });
    }
    let mut inside = vec![false; n];
    for &p in points {
        inside[p] = true;
    }
    let group = collect_subgroup(n, g.elements(bounds.elements)?, |x| {
        points.iter().all(|&p| inside[x.apply(p)])
    })?;
    Ok(Subgroup::from_parts_unchecked(group, g))
}
