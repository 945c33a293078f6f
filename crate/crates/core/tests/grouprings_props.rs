use minusclass::abelian::{FinAbGroup, Subgroup};
use minusclass::grouprings::{a_module, GroupRingElem};
use minusclass::intmat;
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

const FACTORS: [i64; 2] = [2, 6];

fn g() -> FinAbGroup {
    FinAbGroup::new(&FACTORS).unwrap()
}

fn elem() -> impl Strategy<Value = GroupRingElem> {
    prop::collection::vec(-6i64..7, 12)
        .prop_map(|c| GroupRingElem::from_coeffs(&g(), c.into_iter().map(BigInt::from).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).augmentation(), a.augmentation() * b.augmentation());
        prop_assert_eq!((&a * &b).involution(), &a.involution() * &b.involution());
    }

    #[test]
    fn norm_element_absorbs_the_subgroup(a in elem(), x in 0usize..12) {
        let grp = g();
        let i = Subgroup::generated(&grp, &[grp.element_at(x)]).unwrap();
        let n = GroupRingElem::norm_element(&i);
        for t in i.elements() {
            let shift = &GroupRingElem::basis(&grp, &t) - &GroupRingElem::one(&grp);
            prop_assert!((&(&n * &shift) * &a).is_zero());
        }
    }
}

/// `|Z[G/I]/(x)|` equals `|det|` of multiplication by `x` on `Z[G/I]`.
#[test]
fn a_module_order_is_a_determinant() {
    for f in [vec![9], vec![3, 3], vec![2, 6], vec![15]] {
        let grp = FinAbGroup::new(&f).unwrap();
        for i in minusclass::abelian::enumerate_subgroups(&grp, 10_000).unwrap() {
            let q = i.quotient();
            let gq = q.quotient();
            for phi in grp.elements() {
                let m = a_module(&i, &phi).unwrap();
                let y = q.project(&phi);
                let x = &(&GroupRingElem::one(gq) - &GroupRingElem::basis(gq, &gq.neg(&y)))
                    + &GroupRingElem::scalar(gq, i.order());
                let d = intmat::det(&x.translates()).abs();
                assert_eq!(m.order().unwrap(), d, "{grp} I={:?} phi={:?}", i.basis(), phi);
            }
        }
    }
}
