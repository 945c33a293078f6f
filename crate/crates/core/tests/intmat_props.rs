use minusclass::intmat::{self, Row};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn rows(v: &[Vec<i64>]) -> Vec<Row> {
    intmat::from_i64(v)
}

fn matrix(n: usize, m: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-9i64..10, m), n)
}

/// Cofactor expansion along the first row.
fn laplace(a: &[Vec<i64>]) -> BigInt {
    if a.is_empty() {
        return BigInt::from(1);
    }
    let n = a.len();
    let mut acc = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<i64>> =
            a[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
        let term = BigInt::from(a[0][j]) * laplace(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_matches_cofactor_expansion(a in matrix(4, 4)) {
        prop_assert_eq!(intmat::det(&rows(&a)), laplace(&a));
    }

    #[test]
    fn hnf_is_invariant_under_row_operations(a in matrix(4, 3), k in -5i64..6, i in 0usize..4, j in 0usize..4) {
        let base = intmat::hnf(&rows(&a), 3, None);
        let mut b = a.clone();
        if i != j {
            let src = b[j].clone();
            for (x, y) in b[i].iter_mut().zip(&src) {
                *x += k * y;
            }
        }
        b.swap(0, 3);
        prop_assert_eq!(intmat::hnf(&rows(&b), 3, None), base);
    }

    #[test]
    fn hnf_is_idempotent(a in matrix(5, 4)) {
        let h = intmat::hnf(&rows(&a), 4, None);
        prop_assert_eq!(intmat::hnf(&h, 4, None), h.clone());
    }

    #[test]
    fn snf_diagonal_is_a_divisor_chain_with_product_det(a in matrix(4, 4)) {
        let s = intmat::snf(&rows(&a), 4);
        for w in s.diag.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        let prod: BigInt = s.diag.iter().product();
        prop_assert_eq!(prod, laplace(&a).abs());
    }

    #[test]
    fn left_kernel_annihilates(a in matrix(5, 3)) {
        let m = rows(&a);
        let ker = intmat::left_kernel(&m, 3);
        let rank = intmat::hnf(&m, 3, None).len();
        prop_assert_eq!(ker.len(), 5 - rank);
        for v in &ker {
            prop_assert!(intmat::vec_mat(v, &m).iter().all(Zero::is_zero));
        }
    }
}
