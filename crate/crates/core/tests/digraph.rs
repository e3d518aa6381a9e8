use std::collections::{HashSet, VecDeque};

use arcfact_core::digraph::{
    catalog_digraphs, directed_cycle, normal_subgroup_audit, normal_subgroup_descent, paley_tournament, s_arc_criterion,
    s_arcs_direct, valency_or_cycle_audit, vertex_primitivity, BatteryInstance, CosetDigraph, ValencyClass,
};
use arcfact_core::groups::{alternating, cyclic, pgl2, psl2, symmetric};
use arcfact_core::perm::{intersection, SubgroupLattice};
use arcfact_core::{Bounds, Error, PermGroup, Permutation, Subgroup};
use num_bigint::BigUint;

fn b() -> Bounds {
    Bounds::desk()
}

/// Orbit of the canonical s-arc under the vertex group, against the number of
/// s-arcs, both by explicit enumeration.
fn explicit_s_arc_transitive(d: &CosetDigraph, s: usize) -> bool {
    let adj = d.adjacency(&b()).unwrap();
    let mut all: Vec<Vec<usize>> = (0..adj.len()).map(|v| vec![v]).collect();
    for _ in 0..s {
        all = all
            .into_iter()
            .flat_map(|arc| {
                let last = *arc.last().unwrap();
                adj[last].iter().map(move |&w| {
                    let mut next = arc.clone();
                    next.push(w);
                    next
                })
            })
            .collect();
    }
    let start = d.canonical_arc(s);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(arc) = queue.pop_front() {
        for x in d.vertex_group().generators() {
            let image: Vec<usize> = arc.iter().map(|&v| x.apply(v)).collect();
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    seen.len() == all.len()
}

fn battery() -> Vec<BatteryInstance> {
    let mut out = Vec::new();
    for (name, g) in [
        ("S4", symmetric(4, &b()).unwrap()),
        ("A5", alternating(5, &b()).unwrap()),
        ("S5", symmetric(5, &b()).unwrap()),
        ("PSL2(7)", psl2(7).unwrap()),
        ("PGL2(7)", pgl2(7).unwrap()),
        ("PSL2(11)", psl2(11).unwrap()),
    ] {
        out.extend(catalog_digraphs(name, &g, 2000, &b()).unwrap());
    }
    out
}

#[test]
fn verifiers_agree_with_explicit_orbits() {
    let battery = battery();
    assert!(battery.len() > 20);
    let mut transitive_2 = 0;
    let mut intransitive_2 = 0;
    for inst in &battery {
        let d = &inst.digraph;
        for s in [1, 2, 3] {
            let direct = s_arcs_direct(d, s, &b()).unwrap();
            let crit = s_arc_criterion(d, s, &b()).unwrap();
            let explicit = explicit_s_arc_transitive(d, s);
            assert_eq!(direct.transitive, explicit, "{} s = {s}", inst.label);
            assert_eq!(crit.transitive, explicit, "{} s = {s}", inst.label);
            let expected_arcs = BigUint::from(d.vertex_count()) * BigUint::from(d.valency()).pow(s as u32);
            assert_eq!(direct.arcs, expected_arcs);
            if s == 2 {
                if explicit {
                    transitive_2 += 1;
                } else {
                    intransitive_2 += 1;
                    assert_eq!(crit.failing_level, Some(1));
                }
            }
        }
        // Monotonicity in s.
        let flags: Vec<bool> = (1..=4).map(|s| s_arcs_direct(d, s, &b()).unwrap().transitive).collect();
        assert!(flags.windows(2).all(|w| w[0] || !w[1]), "{}", inst.label);
        assert!(flags[0]);
    }
    assert!(transitive_2 > 0 && intransitive_2 > 0);
}

#[test]
fn valency_regularity_and_antisymmetry() {
    for inst in battery() {
        let d = &inst.digraph;
        let h = d.subgroup();
        let hg = h.conjugate(d.connecting_element()).unwrap();
        let meet = intersection(h, &hg, &b()).unwrap();
        let index = h.order() / meet.order();
        assert_eq!(BigUint::from(d.valency()), index, "{}", inst.label);

        let out = d.adjacency(&b()).unwrap();
        let inn = d.in_adjacency(&b()).unwrap();
        for v in 0..d.vertex_count() {
            assert_eq!(out[v].len(), d.valency());
            assert_eq!(inn[v].len(), d.valency());
            assert!(out[v].iter().all(|w| !inn[v].contains(w)), "{}", inst.label);
            assert!(!out[v].contains(&v));
            for &w in &out[v] {
                assert!(inn[w].contains(&v));
            }
        }
    }
}

#[test]
fn primitive_instances_satisfy_the_dichotomy() {
    let mut primitive = 0;
    for inst in battery() {
        let d = &inst.digraph;
        if vertex_primitivity(d).unwrap().primitive {
            primitive += 1;
            let class = valency_or_cycle_audit(d).unwrap();
            assert_ne!(class, ValencyClass::Counterexample, "{}", inst.label);
        } else {
            assert!(valency_or_cycle_audit(d).is_err());
        }
        if d.is_connected() {
            assert!(normal_subgroup_audit(d, &b()).unwrap().passed, "{}", inst.label);
        }
    }
    assert!(primitive > 0);
}

#[test]
fn maximal_subgroups_give_primitive_digraphs() {
    for g in [alternating(5, &b()).unwrap(), symmetric(5, &b()).unwrap(), psl2(7).unwrap()] {
        let lattice = SubgroupLattice::new(&g, &b()).unwrap();
        let n = lattice.table.len();
        for class in &lattice.classes {
            if class.order == n {
                continue;
            }
            let rep = &class.representative;
            let maximal = !lattice.classes.iter().flat_map(|c| &c.members).any(|k| {
                let size = k.count_ones(..);
                size > class.order && size < n && rep.is_subset(k)
            });
            let h = lattice.table.to_subgroup(rep).unwrap();
            let action = arcfact_core::perm::coset_action(&g, &h, &b()).unwrap();
            let Some(x) = (1..action.degree())
                .map(|v| action.representative(v).clone())
                .find(|x| CosetDigraph::build(&g, &h, x, &b()).is_ok())
            else {
                continue;
            };
            let d = CosetDigraph::build(&g, &h, &x, &b()).unwrap();
            assert_eq!(vertex_primitivity(&d).unwrap().primitive, maximal, "|G| = {}, |H| = {}", g.order(), h.order());
        }
    }
}

#[test]
fn directed_cycles() {
    for p in [3usize, 5, 7, 11] {
        let d = directed_cycle(p, &b()).unwrap();
        assert!(vertex_primitivity(&d).unwrap().primitive);
        for s in 1..=5 {
            assert!(s_arcs_direct(&d, s, &b()).unwrap().transitive);
            assert!(s_arc_criterion(&d, s, &b()).unwrap().transitive);
        }
        assert_eq!(valency_or_cycle_audit(&d).unwrap(), ValencyClass::PrimeDirectedCycle);
        let g = d.group().clone();
        let v = normal_subgroup_descent(&d, &g, 3, &b()).unwrap();
        assert!(v.holds);
    }
    let six = directed_cycle(6, &b()).unwrap();
    let verdict = vertex_primitivity(&six).unwrap();
    assert!(!verdict.primitive);
    assert!(matches!(verdict.block.unwrap().len(), 2 | 3));
    // The generator of C2 is an involution.
    assert!(matches!(directed_cycle(2, &b()), Err(Error::NotADigraph { .. })));
}

#[test]
fn paley_tournaments() {
    for p in [7u64, 11, 19, 23] {
        let d = paley_tournament(p, &b()).unwrap();
        assert_eq!(d.valency() as u64, (p - 1) / 2);
        assert!(vertex_primitivity(&d).unwrap().primitive);
        assert_eq!(valency_or_cycle_audit(&d).unwrap(), ValencyClass::ValencyAtLeast3);
        assert!(s_arcs_direct(&d, 1, &b()).unwrap().transitive);
        assert!(!s_arcs_direct(&d, 2, &b()).unwrap().transitive);
        assert!(!s_arc_criterion(&d, 2, &b()).unwrap().transitive);
        assert!(normal_subgroup_audit(&d, &b()).unwrap().passed);
    }
}

#[test]
fn psl29_valency_matches_index_formula() {
    let g = psl2(9).unwrap();
    let h = Subgroup::new(g.point_stabilizer(9).unwrap(), &g).unwrap();
    assert_eq!(h.order_u64(), Some(36));
    let action = arcfact_core::perm::coset_action(&g, &h, &b()).unwrap();
    let mut built = 0;
    for v in 1..action.degree() {
        let x = action.representative(v).clone();
        let Ok(d) = CosetDigraph::build(&g, &h, &x, &b()) else { continue };
        built += 1;
        let meet = intersection(&h, &h.conjugate(&x).unwrap(), &b()).unwrap();
        assert_eq!(BigUint::from(d.valency()), h.order() / meet.order());
    }
    // PSL2(9) is 2-transitive on 10 points: the single suborbit is self-paired.
    assert_eq!(built, 0);

    let l = pgl2(7).unwrap();
    let battery = catalog_digraphs("PGL2(7)", &l, 2000, &b()).unwrap();
    assert!(battery.iter().any(|i| i.digraph.valency() >= 3));
}

#[test]
fn descent_to_the_index_two_subgroup() {
    let g = pgl2(7).unwrap();
    let l = psl2(7).unwrap();
    let mut checked = 0;
    for inst in catalog_digraphs("PGL2(7)", &g, 2000, &b()).unwrap() {
        let d = &inst.digraph;
        let l_bar = d.action().image_of(&l).unwrap();
        if !l_bar.is_transitive() || !s_arcs_direct(d, 2, &b()).unwrap().transitive {
            continue;
        }
        let v = normal_subgroup_descent(d, &l, 2, &b()).unwrap();
        assert!(v.holds, "{}", inst.label);
        checked += 1;
    }
    assert!(checked > 0);

    // Intransitive L is rejected.
    let c = cyclic(5, &b()).unwrap();
    let d = directed_cycle(5, &b()).unwrap();
    let trivial = PermGroup::trivial(c.degree());
    assert!(matches!(normal_subgroup_descent(&d, &trivial, 2, &b()), Err(Error::InvalidArgument(_))));
}

#[test]
fn loops_and_foreign_elements_are_rejected() {
    let g = alternating(5, &b()).unwrap();
    let h = Subgroup::new(g.point_stabilizer(4).unwrap(), &g).unwrap();
    let inside = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
    assert!(matches!(CosetDigraph::build(&g, &h, &inside, &b()), Err(Error::Degenerate(_))));
    let odd = Permutation::from_cycles(5, &[vec![0, 4]]).unwrap();
    assert!(CosetDigraph::build(&g, &h, &odd, &b()).is_err());
}
