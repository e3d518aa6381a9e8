//! Turning command-line text into groups, subgroups and permutations.

use arcfact_core::spec::{parse_generator_list, parse_group_spec};
use arcfact_core::{Bounds, Error, PermGroup, Permutation, Result, Subgroup};

/// Resolve bounds from a profile name plus per-field overrides.
pub fn resolve_bounds(
    profile: &str,
    elements: Option<u64>,
    subgroups: Option<u64>,
    points: Option<u64>,
) -> Result<Bounds> {
    let mut bounds =
        Bounds::profile(profile).ok_or_else(|| Error::invalid(format!("unknown bounds profile '{profile}'")))?;
    if let Some(v) = elements {
        bounds.elements = v;
    }
    if let Some(v) = subgroups {
        bounds.subgroups = v;
    }
    if let Some(v) = points {
        bounds.points = v;
    }
    Ok(bounds)
}

pub fn group(text: &str, bounds: &Bounds, seed: u64) -> Result<PermGroup> {
    parse_group_spec(text)?.build(bounds, seed)
}

/// A subgroup of `g`: either `;`-separated 1-indexed cycle strings on the
/// points of `g`, or a group specification, whose points are embedded into
/// those of `g` when its degree is smaller.
pub fn subgroup(g: &PermGroup, text: &str, bounds: &Bounds, seed: u64) -> Result<Subgroup> {
    let trimmed = text.trim();
    let h = if trimmed.starts_with('(') {
        let gens = parse_generator_list(trimmed, g.degree())?;
        PermGroup::with_seed(g.degree(), gens, seed)?
    } else {
        let h = group(trimmed, bounds, seed)?;
        if h.degree() > g.degree() {
            return Err(Error::DegreeMismatch {
                expected: g.degree(),
                found: h.degree(),
            });
        }
        if h.degree() < g.degree() {
            let gens = h
                .generators()
                .iter()
                .map(|x| x.extend(g.degree()))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::with_seed(g.degree(), gens, seed)?
        } else {
            h
        }
    };
    Subgroup::new(h, g)
}

pub fn element(g: &PermGroup, text: &str) -> Result<Permutation> {
    Permutation::parse_cycles(text.trim(), g.degree(), true)
}

/// `s=3` or `3`.
pub fn parse_check(text: &str) -> Result<usize> {
    let t = text.trim();
    let digits = t.strip_prefix("s=").unwrap_or(t);
    digits
        .trim()
        .parse()
        .ok()
        .filter(|&s| s >= 1)
        .ok_or_else(|| Error::invalid(format!("expected s=<k> with k >= 1, got '{text}'")))
}
