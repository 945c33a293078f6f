//! Lattice representatives of the shifts of `A_{I, phi}` and the identities
//! they satisfy.

use minusclass::abelian::{FinAbGroup, Subgroup};
use minusclass::lattices::{
    omega1_lattice, omega_minus1_lattice, verify_ext_sequence, verify_kernel_generators, verify_unit_transport,
};
use minusclass::Error;

fn main() -> minusclass::Result<()> {
    let g = FinAbGroup::cyclic(27)?;
    let sigma = g.generator(0);
    let i = Subgroup::generated(&g, &[g.mul(9, &sigma)])?;
    let phi = g.mul(3, &sigma);

    let up = omega1_lattice(&i, &phi)?;
    let down = omega_minus1_lattice(&i, &phi)?;
    println!("omega^1 index {:?}, omega^-1 index {:?}", up.lattice.index_in_ring(), down.lattice.index_in_ring());
    println!("kernel generators: {}", verify_kernel_generators(&i, &phi)?);
    println!("ext sequence: {:?}", verify_ext_sequence(&i, &phi)?);

    let phi2 = g.mul(6, &sigma);
    let t = match verify_unit_transport(&i, &phi, &i, &phi2, 1) {
        Err(Error::Precision { required, .. }) => verify_unit_transport(&i, &phi, &i, &phi2, required)?,
        r => r?,
    };
    println!("unit transport phi -> 2 phi: {t:?}");
    Ok(())
}
