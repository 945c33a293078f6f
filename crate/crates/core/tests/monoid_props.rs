use minusclass::abelian::{groups_of_order, FinAbGroup, Subgroup, DEFAULT_ENUMERATION_BOUND as B};
use minusclass::arith;
use minusclass::monoid::{analyze_monoid, build_sets, formula_counts, Verdict};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cyclic_counts_match_closed_forms(n in 1i64..200) {
        let sets = build_sets(&FinAbGroup::cyclic(n).unwrap(), B).unwrap();
        prop_assert_eq!(formula_counts(n as u64), (sets.s_len() as u64, sets.t_len() as u64));
    }

    #[test]
    fn beta_lands_on_tuples_of_the_same_sylow_type(n in 2u64..48, pick in any::<prop::sample::Index>()) {
        let gs = groups_of_order(n);
        let g = &gs[pick.index(gs.len())];
        let sets = build_sets(g, B).unwrap();
        let t = sets.t();
        for (k, pair) in sets.s().iter().enumerate() {
            let (i, d) = (&pair.i, &pair.d);
            for pos in sets.beta_at(k).support() {
                let tup = &t[pos];
                prop_assert!(arith::is_prime(tup.p));
                prop_assert!(d.is_subgroup_of(&tup.h));
                prop_assert_eq!(&tup.istar, &i.intersect(&Subgroup::full(g).sylow(tup.p)).unwrap());
                prop_assert!(!tup.istar.is_trivial());
                prop_assert_eq!(&tup.dstar, &d.intersect(&Subgroup::full(g).sylow(tup.p)).unwrap());
            }
        }
    }
}

#[test]
fn small_catalogue_passes_all_checks() {
    for n in 1..=36 {
        for g in groups_of_order(n) {
            let bound = if g.is_cyclic() { 3 } else { 2 };
            let rep = analyze_monoid(&g, bound, B).unwrap();
            assert!(rep.all_checks_pass(), "{g}");
            let free = g.is_cyclic() || arith::is_prime_power(n);
            assert_eq!(rep.verdict == Verdict::Free, free, "{g}");
        }
    }
}
