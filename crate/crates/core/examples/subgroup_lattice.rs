//! Subgroups of a finite abelian group, with their structure and the
//! classification of the group itself.

use minusclass::abelian::{enumerate_subgroups, FinAbGroup, Subgroup, DEFAULT_ENUMERATION_BOUND};

fn main() -> minusclass::Result<()> {
    let g = FinAbGroup::new(&[2, 12])?;
    let subs = enumerate_subgroups(&g, DEFAULT_ENUMERATION_BOUND)?;
    println!("{g}: {} subgroups, {:?}", subs.len(), Subgroup::full(&g).classify());
    for h in &subs {
        let q = h.quotient();
        println!(
            "order {:>2}  {:<12} quotient {:<12} cyclic quotient: {}",
            h.order(),
            h.structure().to_string(),
            q.quotient().to_string(),
            q.quotient().is_cyclic()
        );
    }
    Ok(())
}
