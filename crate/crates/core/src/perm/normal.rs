use std::collections::HashMap;

use super::group::PermGroup;
use super::permutation::Permutation;
use super::subgroup::Subgroup;
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// Conjugacy classes of elements, as lists of elements (identity class first).
pub fn conjugacy_classes(h: &PermGroup, bound: u64) -> Result<Vec<Vec<Permutation>>> {
    let elements: Vec<Permutation> = h.elements(bound)?.collect();
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes: Vec<Vec<Permutation>> = Vec::new();
    let id = index[&h.identity()];
    let mut order: Vec<usize> = vec![id];
    order.extend((0..elements.len()).filter(|&i| i != id));
    for start in order {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        class_of[start] = cid;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let x = &elements[members[k]];
            for g in h.generators() {
                let j = index[&x.conjugate_by(g)];
                if class_of[j] == usize::MAX {
                    class_of[j] = cid;
                    members.push(j);
                }
            }
            k += 1;
        }
        classes.push(members.into_iter().map(|i| elements[i].clone()).collect());
    }
    Ok(classes)
}

/// All normal subgroups of `h`: normal closures of single elements, closed
/// under joins. Sorted by order, then by generator list.
pub fn enumerate_normal_subgroups(h: &PermGroup, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    if h.order_u64().map_or(true, |n| n > bounds.normal_subgroups) {
        return Err(Error::limit("normal subgroup enumeration", bounds.normal_subgroups, h.order()));
    }
    let classes = conjugacy_classes(h, bounds.normal_subgroups)?;
    let mut found: Vec<PermGroup> = vec![PermGroup::trivial(h.degree())];
    let mut closures: Vec<PermGroup> = Vec::new();
    let known = |found: &[PermGroup], n: &PermGroup| -> Result<bool> {
        for m in found {
            if m.same_elements(n)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    for class in classes.iter().skip(1) {
        let n = h.normal_closure(&class[..1])?;
        if !known(&found, &n)? {
            closures.push(n.clone());
            found.push(n);
        }
    }
    let mut i = 0;
    while i < found.len() {
        for c in &closures {
            if found[i].contains_group(c)? {
                continue;
            }
            let j = found[i].join_with(c.generators())?;
            if !known(&found, &j)? {
                found.push(j);
            }
        }
        i += 1;
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|n| Subgroup::from_parts_unchecked(n, h))
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(b.order())
            .then_with(|| a.generators().cmp(b.generators()))
    });
    Ok(out)
}

/// Whether `h` is simple (nontrivial with no proper nontrivial normal subgroup).
pub fn is_simple(h: &PermGroup, bounds: &Bounds) -> Result<bool> {
    if h.is_trivial() {
        return Ok(false);
    }
    Ok(enumerate_normal_subgroups(h, bounds)?.len() == 2)
}
