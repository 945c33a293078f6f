//! The monoid of admissible classes for one group: index sets, `beta`, and
//! the freeness verdict.
//!
//! `cargo run --example freeness -- 3,6`

use minusclass::abelian::DEFAULT_ENUMERATION_BOUND;
use minusclass::cli::parse_group;
use minusclass::monoid::{analyze_monoid, build_sets};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "30".into());
    let g = parse_group(&spec)?;
    let sets = build_sets(&g, DEFAULT_ENUMERATION_BOUND)?;
    let t = sets.t();
    for (k, pair) in sets.s().iter().enumerate().take(12) {
        let image: Vec<String> = sets
            .beta_at(k)
            .support()
            .into_iter()
            .map(|j| format!("(p={}, |H|={}, |I*|={}, |D*|={})", t[j].p, t[j].h.order(), t[j].istar.order(), t[j].dstar.order()))
            .collect();
        println!("|I|={:<3} |D|={:<3} -> {}", pair.i.order(), pair.d.order(), image.join(" + "));
    }
    let rep = analyze_monoid(&g, 3, DEFAULT_ENUMERATION_BOUND)?;
    println!("{g}: {:?}", rep.counts);
    println!("verdict {} (rank {:?}), all checks pass: {}", rep.verdict, rep.rank, rep.all_checks_pass());
    Ok(())
}
