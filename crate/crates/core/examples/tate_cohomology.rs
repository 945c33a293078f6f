//! Tate cohomology of `A_{I, phi}` against the closed form, plus the
//! character decomposition behind the freeness criterion.

use minusclass::abelian::{enumerate_subgroups, FinAbGroup, DEFAULT_ENUMERATION_BOUND};
use minusclass::grouprings::a_module;
use minusclass::modules::{characters, check_prop_free, tate, tate_closed_form};

fn main() -> minusclass::Result<()> {
    let g = FinAbGroup::new(&[3, 3])?;
    let subs = enumerate_subgroups(&g, DEFAULT_ENUMERATION_BOUND)?;
    let i = &subs[1];
    let phi = g.generator(1);
    let a = a_module(i, &phi)?;
    println!("I = {:?}, phi = {:?}, A = {:?}", i.basis(), phi.coords(), a.invariant_factors()?);
    for h in &subs {
        let t = tate(h, &a)?;
        let closed = tate_closed_form(i, &phi, h)?.invariant_factors()?;
        println!("H = {:<14} H^0 {:?}  H^-1 {:?}  closed form {:?}", format!("{:?}", h.basis()), t.h0_factors(), t.h_minus1_factors(), closed);
    }

    let z = FinAbGroup::cyclic(15)?;
    let i = &enumerate_subgroups(&z, DEFAULT_ENUMERATION_BOUND)?[1];
    let phi = z.generator(0);
    for chi in characters(&z, 3) {
        let (ct, criterion) = check_prop_free(i, &phi, &chi)?;
        println!("Z/15, I of order {}, chi of order {}: c.t. {ct}, criterion {criterion}", i.order(), chi.order);
    }
    Ok(())
}
