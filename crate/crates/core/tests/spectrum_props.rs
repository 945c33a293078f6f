use minusclass::abelian::FinAbGroup;
use minusclass::grouprings::GroupRingElem;
use minusclass::intmat;
use minusclass::spectrum::{
    char_valuation, cyclotomic_prime_power, predicted_membership, resultant_monic, snf_total, verify_claims,
    SpectrumSample,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Sylvester determinant of two polynomials given lowest degree first.
fn sylvester(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let trim = |v: &[BigInt]| {
        let mut v = v.to_vec();
        while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    };
    let (f, g) = (trim(f), trim(g));
    let (m, n) = (f.len() - 1, g.len() - 1);
    let mut rows = Vec::new();
    for (poly, count) in [(&f, n), (&g, m)] {
        for k in 0..count {
            let mut row = vec![BigInt::zero(); m + n];
            for (j, c) in poly.iter().rev().enumerate() {
                row[k + j] = c.clone();
            }
            rows.push(row);
        }
    }
    intmat::det(&rows)
}

fn ord(p: u64, n: &BigInt) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_matches_sylvester(f in prop::collection::vec(-20i64..21, 1..9), i in 1u32..3) {
        prop_assume!(f.iter().any(|&c| c != 0));
        let phi = cyclotomic_prime_power(3, i);
        prop_assert_eq!(resultant_monic(&phi, &big(&f)), sylvester(&phi, &big(&f)));
    }

    #[test]
    fn valuations_sum_to_cokernel_length(u in prop::collection::vec(0i64..243, 9), eps in prop::sample::select(vec![1i64, 2, 4, -1])) {
        match SpectrumSample::evaluate(3, 2, u, eps) {
            Ok(s) => {
                prop_assert_eq!(s.total, s.snf_total);
                prop_assert!(s.member);
                prop_assert!(verify_claims(&s).holds());
            }
            Err(minusclass::Error::DegenerateCharacter { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn char_valuation_is_ord_of_sylvester_resultant(u in prop::collection::vec(-30i64..31, 25)) {
        let g = FinAbGroup::cyclic(25).unwrap();
        let x = GroupRingElem::from_coeffs(&g, big(&u)).unwrap();
        for i in 1..=2 {
            let res = sylvester(&cyclotomic_prime_power(5, i), &big(&u));
            match char_valuation(&x, i) {
                Ok(v) => prop_assert_eq!(v, ord(5, &res)),
                Err(_) => prop_assert!(res.is_zero()),
            }
        }
    }
}

#[test]
fn snf_total_of_scalar() {
    let g = FinAbGroup::cyclic(9).unwrap();
    let x = GroupRingElem::scalar(&g, 27);
    let direct = {
        let mut rows = GroupRingElem::norm_element(&minusclass::abelian::Subgroup::full(&g)).translates();
        rows.extend(x.translates());
        let d: BigInt = intmat::cokernel_invariants(&rows, 9).iter().product();
        ord(3, &d)
    };
    assert_eq!(snf_total(&x).unwrap(), direct);
}

#[test]
fn predicted_sets() {
    let small: Vec<u64> = (0..=12).filter(|&v| predicted_membership(v, 3, 2, 1)).collect();
    assert_eq!(small, vec![2, 4, 6, 7, 8, 9, 10, 11, 12]);
    let r3: Vec<u64> = (0..=12).filter(|&v| predicted_membership(v, 3, 3, 1)).collect();
    assert_eq!(r3, vec![3, 6, 9, 10, 11, 12]);
    let p5: Vec<u64> = (0..=13).filter(|&v| predicted_membership(v, 5, 2, 1)).collect();
    assert_eq!(p5, vec![2, 4, 6, 8, 10, 11, 12, 13]);
}
