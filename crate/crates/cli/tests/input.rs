use arcfact_cli::input;
use arcfact_cli::repro::{select, CASES};
use arcfact_core::groups::symmetric;
use arcfact_core::{Bounds, PermGroup, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_lists_round_trip(gens in prop::collection::vec(perm(6), 1..4)) {
        let s6 = symmetric(6, &Bounds::desk()).unwrap();
        let text = gens.iter().map(|g| g.to_cycle_string(true)).collect::<Vec<_>>().join(";");
        let direct = PermGroup::new(6, gens.clone()).unwrap();
        let parsed = input::subgroup(&s6, &text, &Bounds::desk(), 3).unwrap();
        prop_assert!(parsed.group().same_elements(&direct).unwrap());
        for g in &gens {
            prop_assert_eq!(&input::element(&s6, &g.to_cycle_string(true)).unwrap(), g);
        }
    }

    #[test]
    fn exact_ids_select_one_case(i in 0..CASES.len()) {
        let chosen = select(Some(CASES[i].id)).unwrap();
        prop_assert_eq!(chosen.len(), 1);
        prop_assert_eq!(chosen[0].id, CASES[i].id);
    }

    #[test]
    fn check_argument(k in 1usize..1000) {
        prop_assert_eq!(input::parse_check(&format!("s={k}")).unwrap(), k);
        prop_assert_eq!(input::parse_check(&k.to_string()).unwrap(), k);
    }
}

#[test]
fn check_argument_rejects_zero() {
    assert!(input::parse_check("s=0").is_err());
    assert!(input::parse_check("s=").is_err());
}

#[test]
fn smaller_groups_are_embedded() {
    let s6 = symmetric(6, &Bounds::desk()).unwrap();
    let h = input::subgroup(&s6, "S:4", &Bounds::desk(), 1).unwrap();
    assert_eq!(h.order_u64(), Some(24));
    assert_eq!(h.orbit_lengths().iter().filter(|&&l| l == 1).count(), 2);
    assert!(input::subgroup(&s6, "S:7", &Bounds::desk(), 1).is_err());
}
