//! Sweeps the monoid analysis over every abelian group up to a given order.
//!
//! `cargo run --example monoid_catalogue -- 60 [max_rank]`

use std::time::Instant;

use minusclass::abelian::{groups_of_order, DEFAULT_ENUMERATION_BOUND};
use minusclass::monoid::analyze_monoid;

fn main() -> minusclass::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let max: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let max_rank: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(usize::MAX);
    println!("group\t#S\t#S'\t#T\tverdict\tchecks\tms");
    for n in 1..=max {
        for g in groups_of_order(n).into_iter().filter(|g| g.rank() <= max_rank) {
            let start = Instant::now();
            let bound = if g.is_cyclic() { 3 } else { 2 };
            let rep = analyze_monoid(&g, bound, DEFAULT_ENUMERATION_BOUND)?;
            println!(
                "{g}\t{}\t{}\t{}\t{}\t{}\t{}",
                rep.counts.s,
                rep.counts.s_prime,
                rep.counts.t,
                rep.verdict,
                if rep.all_checks_pass() { "ok" } else { "FAILED" },
                start.elapsed().as_millis()
            );
        }
    }
    Ok(())
}
