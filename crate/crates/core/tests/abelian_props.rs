use std::collections::HashSet;

use minusclass::abelian::{enumerate_subgroups, groups_of_order, FinAbGroup, GroupElement, Subgroup};
use proptest::prelude::*;

fn group() -> impl Strategy<Value = FinAbGroup> {
    prop::sample::select(vec![vec![12], vec![2, 4], vec![3, 9], vec![2, 2, 2], vec![6, 6], vec![4, 8], vec![2, 30]])
        .prop_map(|f| FinAbGroup::new(&f).unwrap())
}

fn element(g: &FinAbGroup, seed: u64) -> GroupElement {
    g.element_at((seed % g.order()) as usize)
}

/// Element sets of all subgroups generated by at most two elements.
fn two_generated(g: &FinAbGroup) -> HashSet<Vec<usize>> {
    let elems: Vec<GroupElement> = g.elements().collect();
    let mut out = HashSet::new();
    for a in &elems {
        for b in &elems {
            let mut set = HashSet::new();
            for i in 0..g.element_order(a) {
                for j in 0..g.element_order(b) {
                    set.insert(g.index_of(&g.add(&g.mul(i as i64, a), &g.mul(j as i64, b))));
                }
            }
            let mut v: Vec<usize> = set.into_iter().collect();
            v.sort();
            out.insert(v);
        }
    }
    out
}

#[test]
fn subgroup_counts_match_brute_force_for_rank_two() {
    for f in [vec![12], vec![2, 4], vec![3, 9], vec![4, 4], vec![6, 6], vec![2, 10]] {
        let g = FinAbGroup::new(&f).unwrap();
        let subs = enumerate_subgroups(&g, 10_000).unwrap();
        let sets: HashSet<Vec<usize>> = subs
            .iter()
            .map(|h| {
                let mut v: Vec<usize> = h.elements().iter().map(|x| g.index_of(x)).collect();
                v.sort();
                v
            })
            .collect();
        assert_eq!(sets.len(), subs.len(), "{g}: duplicate subgroups");
        assert_eq!(sets, two_generated(&g), "{g}");
    }
}

#[test]
fn groups_of_order_counts_partitions() {
    // p(1..=6) = 1, 2, 3, 5, 7, 11
    assert_eq!(groups_of_order(64).len(), 11);
    assert_eq!(groups_of_order(72).len(), 6);
    assert_eq!(groups_of_order(100).len(), 4);
    assert_eq!(groups_of_order(30).len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subgroup_is_independent_of_generator_order(g in group(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let x = [element(&g, a), element(&g, b), element(&g, c)];
        let h1 = Subgroup::generated(&g, &x).unwrap();
        let h2 = Subgroup::generated(&g, &[x[2].clone(), x[0].clone(), x[1].clone(), g.add(&x[0], &x[1])]).unwrap();
        prop_assert_eq!(&h1, &h2);
        prop_assert_eq!(h1.elements().len() as u64, h1.order());
    }

    #[test]
    fn product_formula_for_join_and_meet(g in group(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let h = Subgroup::generated(&g, &[element(&g, a)]).unwrap();
        let k = Subgroup::generated(&g, &[element(&g, b), element(&g, c)]).unwrap();
        let join = h.join(&k).unwrap();
        let meet = h.intersect(&k).unwrap();
        prop_assert_eq!(h.order() * k.order(), join.order() * meet.order());
        prop_assert!(meet.is_subgroup_of(&h) && meet.is_subgroup_of(&k));
        prop_assert!(h.is_subgroup_of(&join) && k.is_subgroup_of(&join));
    }

    #[test]
    fn quotient_orders_multiply(g in group(), a in any::<u64>()) {
        let h = Subgroup::generated(&g, &[element(&g, a)]).unwrap();
        let q = h.quotient();
        prop_assert_eq!(q.quotient().order() * h.order(), g.order());
        let x = element(&g, a.wrapping_mul(31).wrapping_add(7));
        prop_assert_eq!(q.project(&q.section(&q.project(&x))), q.project(&x));
    }
}
