//! Factorizations `G = HK` and the search for homogeneous factorizations
//! `G = AB` with `A ≅ B`.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::numtheory::prime_set_u64;
use crate::perm::{
    are_conjugate_subgroups, coset_action, intersection, ElementSet, PermGroup, Permutation, Subgroup, SubgroupLattice,
};
use crate::ser::biguint_str;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// `|H ∩ K| |G| = |H| |K|`.
    Order,
    /// `H` is transitive on the right cosets of `K`.
    HTransitiveOnCosetsOfK,
    /// `K` is transitive on the right cosets of `H`.
    KTransitiveOnCosetsOfH,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationCertificate {
    #[serde(serialize_with = "biguint_str")]
    pub order_g: BigUint,
    #[serde(serialize_with = "biguint_str")]
    pub order_h: BigUint,
    #[serde(serialize_with = "biguint_str")]
    pub order_k: BigUint,
    #[serde(serialize_with = "biguint_str")]
    pub order_intersection: BigUint,
    pub verdict: bool,
    pub criteria_checked: Vec<Criterion>,
}

impl FactorizationCertificate {
    /// Certificate from orders alone.
    pub fn from_orders(g: BigUint, h: BigUint, k: BigUint, hk: BigUint) -> Self {
        let verdict = &hk * &g == &h * &k;
        FactorizationCertificate {
            order_g: g,
            order_h: h,
            order_k: k,
            order_intersection: hk,
            verdict,
            criteria_checked: vec![Criterion::Order],
        }
    }
}

fn check_inside(g: &PermGroup, h: &PermGroup, name: &str) -> Result<()> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    if !g.contains_group(h)? {
        return Err(Error::invalid(format!("{name} is not a subgroup of G")));
    }
    Ok(())
}

/// Whether `a` is transitive on the right cosets of `b` in `g`.
fn transitive_on_cosets(g: &PermGroup, a: &PermGroup, b: &PermGroup, bounds: &Bounds) -> Result<bool> {
    let action = coset_action(g, &Subgroup::new(b.clone(), g)?, bounds)?;
    let image = action.image_of(a)?;
    Ok(image.orbit(0)?.len() == action.degree())
}

/// Decide `G = HK` by the order identity; with `cross_check`, also by
/// transitivity of each factor on the cosets of the other, insisting that all
/// three agree.
pub fn is_factorization(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    cross_check: bool,
    bounds: &Bounds,
) -> Result<FactorizationCertificate> {
    check_inside(g, h, "H")?;
    check_inside(g, k, "K")?;
    let hs = Subgroup::new(h.clone(), g)?;
    let ks = Subgroup::new(k.clone(), g)?;
    let both = intersection(&hs, &ks, bounds)?;
    let mut cert = FactorizationCertificate::from_orders(
        g.order().clone(),
        h.order().clone(),
        k.order().clone(),
        both.order().clone(),
    );
    if cross_check {
        let e = transitive_on_cosets(g, h, k, bounds)?;
        let f = transitive_on_cosets(g, k, h, bounds)?;
        cert.criteria_checked.push(Criterion::HTransitiveOnCosetsOfK);
        cert.criteria_checked.push(Criterion::KTransitiveOnCosetsOfH);
        if e != cert.verdict || f != cert.verdict {
            return Err(Error::Internal(format!(
                "factorization criteria disagree: order identity {}, H on cosets of K {e}, K on cosets of H {f}",
                cert.verdict
            )));
        }
    }
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// `B = A^x` for some `x` in the ambient group.
    ConjugateInAmbient,
    /// `A ≅ B` as abstract groups.
    OrderAndProfileIsomorphic,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::ConjugateInAmbient => "conj",
            SearchMode::OrderAndProfileIsomorphic => "iso",
        })
    }
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conj" | "conjugate" | "conjugate-in-ambient" => Ok(SearchMode::ConjugateInAmbient),
            "iso" | "isomorphic" | "order-and-profile-isomorphic" => Ok(SearchMode::OrderAndProfileIsomorphic),
            _ => Err(Error::invalid(format!("unknown search mode '{s}' (expected conj or iso)"))),
        }
    }
}

/// A subgroup as it appears in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSummary {
    #[serde(serialize_with = "biguint_str")]
    pub order: BigUint,
    /// 1-indexed cycle notation.
    pub generators: Vec<String>,
}

impl SubgroupSummary {
    pub fn of(g: &PermGroup) -> Self {
        SubgroupSummary {
            order: g.order().clone(),
            generators: g.generator_strings(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomFactPair {
    pub a: SubgroupSummary,
    pub b: SubgroupSummary,
    pub intersection_order: u64,
    pub index: u64,
    /// `x` in the ambient group with `A^x = B` (conjugacy mode only).
    pub witness: Option<String>,
    /// Whether `A ≅ B` was certified by an explicit isomorphism rather than
    /// by invariants alone.
    pub isomorphism_certified: bool,
    pub certificate: FactorizationCertificate,
    #[serde(skip)]
    pub subgroups: (Subgroup, Subgroup),
    #[serde(skip)]
    pub witness_perm: Option<Permutation>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchSpace {
    pub subgroup_classes: usize,
    pub subgroups_total: usize,
    /// Classes passing the index and prime-set filters.
    pub candidate_classes: usize,
    /// Unordered pairs of candidate classes of equal order.
    pub pairs_examined: usize,
    /// Of those, pairs that factorize the group.
    pub factorizing_pairs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomFactReport {
    pub group: String,
    #[serde(serialize_with = "biguint_str")]
    pub group_order: BigUint,
    pub mode: SearchMode,
    pub min_index: u64,
    pub pairs: Vec<HomFactPair>,
    pub search_space: SearchSpace,
}

impl HomFactReport {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Every factorization `Gv = AB` with `|A| = |B|`, `|Gv : A| >= min_index`,
/// `π(A) = π(Gv)`, and `A`, `B` either conjugate in `ambient` or isomorphic,
/// up to conjugacy of each factor in `Gv`.
///
/// Factorizations are invariant under conjugating either factor, so one
/// representative per class suffices. An empty list is a proof of
/// nonexistence; hitting a bound is an error, never a partial answer.
pub fn homogeneous_search(
    gv: &PermGroup,
    ambient: Option<&PermGroup>,
    mode: SearchMode,
    min_index: u64,
    bounds: &Bounds,
) -> Result<HomFactReport> {
    if min_index < 1 {
        return Err(Error::invalid("min_index must be at least 1"));
    }
    if mode == SearchMode::ConjugateInAmbient {
        let amb = ambient.ok_or_else(|| Error::invalid("conjugacy mode needs an ambient group"))?;
        check_inside(amb, gv, "Gv")?;
    }
    let lattice = SubgroupLattice::new(gv, bounds)?;
    let table = &lattice.table;
    let n = table.len() as u64;
    let primes = prime_set_u64(n);

    let mut space = SearchSpace {
        subgroup_classes: lattice.classes.len(),
        subgroups_total: lattice.total_subgroups(),
        ..SearchSpace::default()
    };
    let candidates: Vec<usize> = (0..lattice.classes.len())
        .filter(|&i| {
            let o = lattice.classes[i].order as u64;
            n / o >= min_index && prime_set_u64(o) == primes
        })
        .collect();
    space.candidate_classes = candidates.len();

    let mut pairs = Vec::new();
    for (ii, &i) in candidates.iter().enumerate() {
        for &j in &candidates[ii..] {
            let (ci, cj) = (&lattice.classes[i], &lattice.classes[j]);
            if ci.order != cj.order {
                continue;
            }
            space.pairs_examined += 1;
            let a = &ci.representative;
            let b = &cj.representative;
            let mut common = a.clone();
            common.intersect_with(b);
            let meet = common.count_ones(..) as u64;
            if meet * n != (ci.order as u64) * (cj.order as u64) {
                continue;
            }
            space.factorizing_pairs += 1;
            let a_sub = table.to_subgroup(a)?;
            let b_sub = table.to_subgroup(b)?;
            let (witness_perm, certified) = match mode {
                SearchMode::ConjugateInAmbient => {
                    let amb = ambient.expect("checked above");
                    let (a_amb, b_amb) = (a_sub.within(amb)?, b_sub.within(amb)?);
                    match are_conjugate_subgroups(amb, &a_amb, &b_amb, bounds)? {
                        Some(x) => (Some(x), true),
                        None => continue,
                    }
                }
                SearchMode::OrderAndProfileIsomorphic => match isomorphic(&lattice, a, b, bounds) {
                    Some(certified) => (None, certified),
                    None => continue,
                },
            };
            let certificate = is_factorization(gv, a_sub.group(), b_sub.group(), false, bounds)?;
            if !certificate.verdict {
                return Err(Error::Internal("table and chain disagree on a factorization".into()));
            }
            for s in [&a_sub, &b_sub] {
                if s.prime_set() != gv.prime_set() {
                    return Err(Error::Internal("homogeneous factor misses a prime of the group".into()));
                }
            }
            pairs.push((
                a.clone(),
                b.clone(),
                HomFactPair {
                    a: SubgroupSummary::of(&a_sub),
                    b: SubgroupSummary::of(&b_sub),
                    intersection_order: meet,
                    index: n / ci.order as u64,
                    witness: witness_perm.as_ref().map(|x| x.to_cycle_string(true)),
                    isomorphism_certified: certified,
                    certificate,
                    subgroups: (a_sub, b_sub),
                    witness_perm,
                },
            ));
        }
    }
    pairs.sort_by(|(a1, b1, p1), (a2, b2, p2)| {
        p2.a.order
            .cmp(&p1.a.order)
            .then_with(|| a1.ones().cmp(a2.ones()))
            .then_with(|| b1.ones().cmp(b2.ones()))
    });
    Ok(HomFactReport {
        group: format!("order {}", gv.order()),
        group_order: gv.order().clone(),
        mode,
        min_index,
        pairs: pairs.into_iter().map(|(_, _, p)| p).collect(),
        search_space: space,
    })
}

/// `Some(certified)` when the two subgroups are judged isomorphic: equal
/// invariants, plus an explicit isomorphism when the order is small enough.
fn isomorphic(lattice: &SubgroupLattice, a: &ElementSet, b: &ElementSet, bounds: &Bounds) -> Option<bool> {
    let table = &lattice.table;
    if table.profile(a) != table.profile(b) {
        return None;
    }
    if (a.count_ones(..) as u64) <= bounds.iso_certify {
        table.find_isomorphism(a, b).map(|_| true)
    } else {
        Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneFactorVerdict {
    pub h_transitive: bool,
    pub k_transitive: bool,
}

/// For a factorization of `S_n` or `A_n` in its natural action, which
/// factors are transitive. At least one always is.
pub fn one_factor_transitive(g: &PermGroup, h: &PermGroup, k: &PermGroup, bounds: &Bounds) -> Result<OneFactorVerdict> {
    let n = g.degree();
    let factorial: BigUint = (1..=n as u64).product();
    let natural = g.is_transitive() && (g.order() == &factorial || (n >= 2 && g.order() * 2u32 == factorial));
    if !natural {
        return Err(Error::invalid("G must be a symmetric or alternating group in its natural action"));
    }
    if !is_factorization(g, h, k, false, bounds)?.verdict {
        return Err(Error::invalid("G = HK is not a factorization"));
    }
    let verdict = OneFactorVerdict {
        h_transitive: h.is_transitive(),
        k_transitive: k.is_transitive(),
    };
    if !verdict.h_transitive && !verdict.k_transitive {
        return Err(Error::Internal("neither factor of a factorization of S_n or A_n is transitive".into()));
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{alternating, pgl2, symmetric, transitive_a5_in_a6, wreath};

    fn b() -> Bounds {
        Bounds::desk()
    }

    #[test]
    fn s6_pgl25_times_wreath() {
        let s6 = symmetric(6, &b()).unwrap();
        let h = pgl2(5).unwrap();
        let k = wreath(&symmetric(3, &b()).unwrap(), 2, &b()).unwrap();
        let cert = is_factorization(&s6, &h, &k, true, &b()).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.order_intersection, BigUint::from(12u32));
        assert_eq!(cert.criteria_checked.len(), 3);
        let v = one_factor_transitive(&s6, &h, &k, &b()).unwrap();
        assert!(v.h_transitive && v.k_transitive);
    }

    #[test]
    fn whole_group_factorizes() {
        let g = alternating(5, &b()).unwrap();
        let cert = is_factorization(&g, &g, &g, true, &b()).unwrap();
        assert!(cert.verdict);
        assert_eq!(&cert.order_intersection, g.order());
    }

    #[test]
    fn s4_point_stabilizer_times_a4() {
        let s4 = symmetric(4, &b()).unwrap();
        let s3 = s4.point_stabilizer(3).unwrap();
        let a4 = alternating(4, &b()).unwrap();
        let v = one_factor_transitive(&s4, &s3, &a4, &b()).unwrap();
        assert_eq!(v, OneFactorVerdict { h_transitive: false, k_transitive: true });
        let err = one_factor_transitive(&s4, &s3, &s3, &b()).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn a6_two_a5_classes() {
        let a6 = alternating(6, &b()).unwrap();
        let a5 = a6.point_stabilizer(5).unwrap();
        let exotic = transitive_a5_in_a6(&b()).unwrap();
        let v = one_factor_transitive(&a6, &a5, exotic.group(), &b()).unwrap();
        assert_eq!(v, OneFactorVerdict { h_transitive: false, k_transitive: true });
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("conj".parse::<SearchMode>().unwrap(), SearchMode::ConjugateInAmbient);
        assert_eq!("iso".parse::<SearchMode>().unwrap(), SearchMode::OrderAndProfileIsomorphic);
        assert!("other".parse::<SearchMode>().is_err());
    }

    #[test]
    fn conj_mode_needs_ambient() {
        let g = symmetric(4, &b()).unwrap();
        assert!(homogeneous_search(&g, None, SearchMode::ConjugateInAmbient, 2, &b()).is_err());
    }
}
