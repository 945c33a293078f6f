//! Ideals of `Z[G]` as lattices: the module `A_{I, phi}` and the index of the
//! ideal `(N_I, 1 - phi^{-1} + #I)`.

use minusclass::abelian::{FinAbGroup, Subgroup};
use minusclass::grouprings::{a_module, GroupRingElem, IdealLattice};
use num_bigint::BigInt;

fn main() -> minusclass::Result<()> {
    let g = FinAbGroup::cyclic(9)?;
    let sigma = g.generator(0);
    let i = Subgroup::generated(&g, &[g.mul(3, &sigma)])?;
    for k in 0..3 {
        let phi = g.mul(k, &sigma);
        let a = a_module(&i, &phi)?;
        let g_tilde = &(&GroupRingElem::one(&g) - &GroupRingElem::basis(&g, &g.neg(&phi)))
            + &GroupRingElem::scalar(&g, i.order());
        let ideal = IdealLattice::from_generators(&[GroupRingElem::norm_element(&i), g_tilde.clone()], &BigInt::from(1))?;
        println!(
            "phi = sigma^{k}: g~ = {g_tilde}  A has invariants {:?}  [Z[G] : ideal] = {:?}",
            a.invariant_factors()?,
            ideal.index_in_ring()
        );
    }
    Ok(())
}
