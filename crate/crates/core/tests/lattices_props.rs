use minusclass::abelian::{enumerate_subgroups, FinAbGroup, Subgroup};
use minusclass::lattices::{omega1_lattice, omega_minus1_lattice, verify_ext_sequence, verify_kernel_generators};
use minusclass::Error;
use proptest::prelude::*;

fn pair(factors: &'static [i64]) -> impl Strategy<Value = (Subgroup, minusclass::abelian::GroupElement)> {
    let g = FinAbGroup::new(factors).unwrap();
    let subs: Vec<Subgroup> = enumerate_subgroups(&g, 10_000).unwrap().into_iter().filter(|h| !h.is_trivial()).collect();
    let n = g.order() as usize;
    (prop::sample::select(subs), 0..n).prop_map(move |(i, x)| {
        let phi = i.parent().element_at(x);
        (i, phi)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_generators_on_cyclic((i, phi) in pair(&[36])) {
        prop_assert!(verify_kernel_generators(&i, &phi).unwrap());
    }

    #[test]
    fn ext_sequence_on_noncyclic((i, phi) in pair(&[2, 6])) {
        prop_assert!(verify_ext_sequence(&i, &phi).unwrap().holds());
    }

    #[test]
    fn representatives_depend_on_the_coset_only((i, phi) in pair(&[18])) {
        let g = i.parent();
        for t in i.elements() {
            let moved = g.add(&phi, &t);
            prop_assert_eq!(omega1_lattice(&i, &phi).unwrap(), omega1_lattice(&i, &moved).unwrap());
            prop_assert_eq!(omega_minus1_lattice(&i, &phi).unwrap(), omega_minus1_lattice(&i, &moved).unwrap());
        }
    }
}

#[test]
fn scope_errors() {
    let g = FinAbGroup::new(&[3, 3]).unwrap();
    let i = Subgroup::full(&g);
    assert!(matches!(omega1_lattice(&i, &g.identity()), Err(Error::Scope(_))));
    let z = FinAbGroup::cyclic(9).unwrap();
    assert!(matches!(omega_minus1_lattice(&Subgroup::trivial(&z), &z.identity()), Err(Error::Precondition(_))));
}
