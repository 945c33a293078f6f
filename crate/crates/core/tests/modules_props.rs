use minusclass::abelian::{enumerate_subgroups, FinAbGroup};
use minusclass::grouprings::{a_module, FiniteModule, GroupRingElem};
use minusclass::modules::{characters, check_prop_free, is_cohomologically_trivial, tate, tate_closed_form};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tate_matches_closed_form_on_2x6(a in 0usize..12, b in 0usize..12, x in 0usize..12) {
        let g = FinAbGroup::new(&[2, 6]).unwrap();
        let subs = enumerate_subgroups(&g, 10_000).unwrap();
        let i = &subs[a % subs.len()];
        let h = &subs[b % subs.len()];
        let phi = g.element_at(x);
        let t = tate(h, &a_module(i, &phi).unwrap()).unwrap();
        let c = tate_closed_form(i, &phi, h).unwrap().invariant_factors().unwrap();
        prop_assert_eq!(t.h0_factors(), c.clone());
        prop_assert_eq!(t.h_minus1_factors(), c);
    }
}

#[test]
fn free_modules_are_cohomologically_trivial() {
    let g = FinAbGroup::new(&[3, 3]).unwrap();
    let m = FiniteModule::ring_quotient(&g, &[GroupRingElem::scalar(&g, 9)]).unwrap();
    assert!(is_cohomologically_trivial(&m).unwrap());
    let trivial = FiniteModule::ring_quotient(&g, &[GroupRingElem::scalar(&g, 3), {
        let s = GroupRingElem::basis(&g, &g.generator(0));
        &s - &GroupRingElem::one(&g)
    }])
    .unwrap();
    assert!(!is_cohomologically_trivial(&trivial).unwrap());
}

#[test]
fn prop_free_sides_agree_on_z15() {
    let g = FinAbGroup::cyclic(15).unwrap();
    for i in enumerate_subgroups(&g, 10_000).unwrap() {
        for phi in g.elements() {
            for p in [3, 5] {
                for chi in characters(&g, p) {
                    let (lhs, rhs) = check_prop_free(&i, &phi, &chi).unwrap();
                    assert_eq!(lhs, rhs, "I={:?} phi={:?} p={p}", i.basis(), phi);
                }
            }
        }
    }
}
