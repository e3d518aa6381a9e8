use std::collections::{BTreeMap, HashMap, HashSet};

use arcfact_core::factor::{homogeneous_search, is_factorization, one_factor_transitive, SearchMode};
use arcfact_core::groups::{
    alternating, cyclic_normalizer, pgammal2, pgl2, psl2, split_torus_normalizer, symmetric, wreath,
};
use arcfact_core::perm::{is_simple, SubgroupLattice};
use arcfact_core::{Bounds, PermGroup, Permutation, Subgroup};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn b() -> Bounds {
    Bounds::desk()
}

fn ord(g: &PermGroup) -> u64 {
    g.order_u64().unwrap()
}

/// Multiplication table over the elements of a small group, indices into
/// `elements`.
struct Table {
    elements: Vec<Permutation>,
    mul: Vec<Vec<u16>>,
}

impl Table {
    fn new(g: &PermGroup) -> Self {
        let elements: Vec<Permutation> = g.elements(u64::MAX).unwrap().collect();
        let index: HashMap<&Permutation, u16> = elements.iter().enumerate().map(|(i, x)| (x, i as u16)).collect();
        let mul = elements
            .iter()
            .map(|x| elements.iter().map(|y| index[&x.compose(y)]).collect())
            .collect();
        Table { elements, mul }
    }

    fn closure(&self, gens: &[u16]) -> Vec<bool> {
        let mut inside = vec![false; self.elements.len()];
        let id = self.elements.iter().position(|x| x.is_identity()).unwrap();
        inside[id] = true;
        let mut list = vec![id as u16];
        let mut i = 0;
        while i < list.len() {
            for &g in gens {
                let y = self.mul[list[i] as usize][g as usize];
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        inside
    }

    fn order_histogram(&self, set: &[bool]) -> BTreeMap<BigUint, usize> {
        let mut h = BTreeMap::new();
        for (i, _) in set.iter().enumerate().filter(|(_, &x)| x) {
            *h.entry(self.elements[i].order()).or_insert(0) += 1;
        }
        h
    }

    fn set_of(&self, g: &PermGroup) -> Vec<bool> {
        self.elements.iter().map(|x| g.contains(x).unwrap()).collect()
    }
}

fn size(set: &[bool]) -> usize {
    set.iter().filter(|&&x| x).count()
}

fn meet(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| **x && **y).count()
}

#[test]
fn a6_homogeneous_pairs_match_brute_force() {
    let a6 = alternating(6, &b()).unwrap();
    let t = Table::new(&a6);
    let n = t.elements.len();

    // Cyclic subgroups, then adjoin one element at a time until nothing new
    // appears.
    let mut subs: HashMap<Vec<bool>, Vec<u16>> = HashMap::new();
    for x in 0..n as u16 {
        subs.entry(t.closure(&[x])).or_insert_with(|| vec![x]);
    }
    let mut frontier: Vec<(Vec<bool>, Vec<u16>)> = subs.iter().map(|(s, g)| (s.clone(), g.clone())).collect();
    while let Some((set, gens)) = frontier.pop() {
        for x in 0..n as u16 {
            if set[x as usize] {
                continue;
            }
            let mut more = gens.clone();
            more.push(x);
            let bigger = t.closure(&more);
            if !subs.contains_key(&bigger) {
                subs.insert(bigger.clone(), more.clone());
                frontier.push((bigger, more));
            }
        }
    }
    let lattice = SubgroupLattice::new(&a6, &b()).unwrap();
    assert_eq!(subs.len(), 501);
    assert_eq!(lattice.total_subgroups(), 501);

    let subs: Vec<Vec<bool>> = subs.into_keys().collect();
    let mut brute: HashSet<(Vec<bool>, Vec<bool>)> = HashSet::new();
    for a in &subs {
        for c in &subs {
            let (sa, sc) = (size(a), size(c));
            if sa != sc || n / sa < 3 {
                continue;
            }
            if meet(a, c) * n != sa * sc {
                continue;
            }
            // Candidate isomorphism: equal element-order statistics.
            if t.order_histogram(a) != t.order_histogram(c) {
                continue;
            }
            brute.insert((a.clone(), c.clone()));
        }
    }
    // Each A5 of one class against each A5 of the other, in both orders.
    assert_eq!(brute.len(), 72);
    for (a, c) in &brute {
        assert_eq!(size(a), 60);
        assert_eq!(meet(a, c), 10);
    }

    let report = homogeneous_search(&a6, None, SearchMode::OrderAndProfileIsomorphic, 3, &b()).unwrap();
    assert_eq!(report.pairs.len(), 1);
    let pair = &report.pairs[0];
    assert_eq!(pair.intersection_order, 10);
    assert!(pair.isomorphism_certified);
    let (sa, sb) = &pair.subgroups;
    let (ta, tb) = (t.set_of(sa), t.set_of(sb));
    assert!(brute.contains(&(ta.clone(), tb.clone())));
    for s in [sa, sb] {
        assert_eq!(ord(s), 60);
        assert!(is_simple(s, &b()).unwrap());
    }

    // The reported class pair accounts for every brute-force pair.
    let conj_class = |s: &[bool]| -> HashSet<Vec<bool>> {
        let elements: Vec<&Permutation> = s.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| &t.elements[i]).collect();
        t.elements
            .iter()
            .map(|x| {
                let g = PermGroup::new(6, elements.iter().map(|y| y.conjugate_by(x)).collect()).unwrap();
                t.set_of(&g)
            })
            .collect()
    };
    let (ca, cb) = (conj_class(&ta), conj_class(&tb));
    assert_eq!((ca.len(), cb.len()), (6, 6));
    for (a, c) in &brute {
        assert!((ca.contains(a) && cb.contains(c)) || (cb.contains(a) && ca.contains(c)));
    }

    let conj = homogeneous_search(&a6, Some(&a6), SearchMode::ConjugateInAmbient, 3, &b()).unwrap();
    assert!(conj.is_empty());
    assert_eq!(conj.search_space.factorizing_pairs, 1);
}

#[test]
fn s6_factorization_through_pgl25() {
    let s6 = symmetric(6, &b()).unwrap();
    let cert = is_factorization(
        &s6,
        &pgl2(5).unwrap(),
        &wreath(&symmetric(3, &b()).unwrap(), 2, &b()).unwrap(),
        true,
        &b(),
    )
    .unwrap();
    assert!(cert.verdict);
    assert_eq!(cert.order_intersection, BigUint::from(120u32 * 72 / 720));
}

#[test]
fn psl27_factorizations() {
    let g = psl2(7).unwrap();
    let borel = g.point_stabilizer(7).unwrap();
    assert_eq!(ord(&borel), 21);
    let lattice = SubgroupLattice::new(&g, &b()).unwrap();
    let s4s: Vec<Subgroup> = lattice.representatives().unwrap().into_iter().filter(|s| ord(s) == 24).collect();
    assert_eq!(s4s.len(), 2);
    for s4 in &s4s {
        let cert = is_factorization(&g, &borel, s4, true, &b()).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.order_intersection, BigUint::from(21u32 * 24 / 168));
    }
    let d8 = cyclic_normalizer(&g, &g, 4, &b()).unwrap();
    assert_eq!(ord(&d8), 8);
    let cert = is_factorization(&g, &d8, &borel, true, &b()).unwrap();
    assert!(cert.verdict);
    assert_eq!(cert.order_intersection, BigUint::from(8u32 * 21 / 168));
}

fn assert_no_homogeneous(gv: &Subgroup, ambient: &PermGroup, mode: SearchMode, min_index: u64) {
    let report = homogeneous_search(gv, Some(ambient), mode, min_index, &b()).unwrap();
    assert!(report.is_empty(), "{:?}", report.pairs.iter().map(|p| (&p.a, &p.b)).collect::<Vec<_>>());
}

#[test]
fn dihedral_vertex_stabilizers_have_no_homogeneous_factorization() {
    let l9 = psl2(9).unwrap();
    let d8 = split_torus_normalizer(&l9, &b()).unwrap();
    assert_eq!(ord(&d8), 8);
    assert_no_homogeneous(&d8, &l9, SearchMode::ConjugateInAmbient, 2);

    let g9 = pgl2(9).unwrap();
    let d16 = split_torus_normalizer(&g9, &b()).unwrap();
    assert_eq!(ord(&d16), 16);
    assert_no_homogeneous(&d16, &g9, SearchMode::ConjugateInAmbient, 2);

    let l8 = psl2(8).unwrap();
    let d18 = cyclic_normalizer(&l8, &l8, 9, &b()).unwrap();
    assert_eq!(ord(&d18), 18);
    assert_no_homogeneous(&d18, &l8, SearchMode::OrderAndProfileIsomorphic, 3);

    let gl8 = pgammal2(8).unwrap();
    let c9c6 = cyclic_normalizer(&gl8, &l8, 9, &b()).unwrap();
    assert_eq!(ord(&c9c6), 54);
    assert_no_homogeneous(&c9c6, &gl8, SearchMode::OrderAndProfileIsomorphic, 3);

    let l7 = psl2(7).unwrap();
    let d8 = cyclic_normalizer(&l7, &l7, 4, &b()).unwrap();
    assert_no_homogeneous(&d8, &l7, SearchMode::ConjugateInAmbient, 2);
    assert_no_homogeneous(&d8, &l7, SearchMode::OrderAndProfileIsomorphic, 3);
}

#[test]
fn d8_in_psl27_is_a_product_of_its_two_klein_groups() {
    // The two Klein four-subgroups of D8 factorize it, but they are not
    // conjugate in PSL2(7); only the isomorphism mode at index 2 sees them.
    let l7 = psl2(7).unwrap();
    let d8 = cyclic_normalizer(&l7, &l7, 4, &b()).unwrap();
    let report = homogeneous_search(&d8, Some(&l7), SearchMode::OrderAndProfileIsomorphic, 2, &b()).unwrap();
    assert_eq!(report.pairs.len(), 1);
    assert_eq!(report.pairs[0].intersection_order, 2);
    assert_eq!(report.pairs[0].index, 2);
}

#[test]
fn conjugate_mode_needs_an_ambient_group() {
    let a5 = alternating(5, &b()).unwrap();
    assert!(homogeneous_search(&a5, None, SearchMode::ConjugateInAmbient, 2, &b()).is_err());
    assert!(homogeneous_search(&a5, None, SearchMode::OrderAndProfileIsomorphic, 0, &b()).is_err());
}

#[test]
fn one_factor_of_s5_is_transitive() {
    let s5 = symmetric(5, &b()).unwrap();
    let lattice = SubgroupLattice::new(&s5, &b()).unwrap();
    let reps = lattice.representatives().unwrap();
    let mut found = 0;
    for h in &reps {
        for k in &reps {
            let cert = is_factorization(&s5, h, k, false, &b()).unwrap();
            if cert.verdict {
                found += 1;
                let v = one_factor_transitive(&s5, h, k, &b()).unwrap();
                assert!(v.h_transitive || v.k_transitive);
            } else {
                assert!(one_factor_transitive(&s5, h, k, &b()).is_err());
            }
        }
    }
    assert!(found > 0);
    let c5 = PermGroup::new(5, vec![Permutation::from_images(vec![1, 2, 3, 4, 0]).unwrap()]).unwrap();
    assert!(one_factor_transitive(&c5, &c5, &c5, &b()).is_err());
}

fn catalog() -> Vec<PermGroup> {
    vec![
        symmetric(4, &b()).unwrap(),
        symmetric(5, &b()).unwrap(),
        alternating(5, &b()).unwrap(),
        psl2(7).unwrap(),
        pgl2(5).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn criteria_agree_and_survive_conjugation(which in 0usize..5, seed in any::<u64>()) {
        let g = &catalog()[which];
        let lattice = SubgroupLattice::new(g, &b()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng| {
            let class = &lattice.classes[rng.gen_range(0..lattice.classes.len())];
            let member = &class.members[rng.gen_range(0..class.members.len())];
            lattice.table.to_subgroup(member).unwrap()
        };
        let h = pick(&mut rng);
        let k = pick(&mut rng);
        // Errors here would mean the three criteria disagree.
        let cert = is_factorization(g, &h, &k, true, &b()).unwrap();
        let x = g.random_element(&mut rng);
        let y = g.random_element(&mut rng);
        let moved = is_factorization(g, &h.conjugate_by(&x).unwrap(), &k.conjugate_by(&y).unwrap(), true, &b()).unwrap();
        prop_assert_eq!(cert.verdict, moved.verdict);
        prop_assert_eq!(cert.verdict, &cert.order_intersection * g.order() == &cert.order_h * &cert.order_k);
    }
}
