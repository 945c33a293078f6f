//! Valuations of `x = (sigma - 1) u + p^r` in `Z[Z/p^r]`: one worked element,
//! then a seeded batch against the predicted set.

use minusclass::spectrum::{sample_spectrum, summarize, verify_claims, PredictedSet, SpectrumSample};

fn main() -> minusclass::Result<()> {
    // u = (sigma - 1)^2 = 1 - 2 sigma + sigma^2
    let mut u = vec![0i64; 9];
    u[..3].copy_from_slice(&[1, -2, 1]);
    let s = SpectrumSample::evaluate(3, 2, u, 1)?;
    println!("c = {:?}, a = {:?}, total {} (cokernel {}), {:?}", s.c, s.a, s.total, s.snf_total, verify_claims(&s));

    for (p, r) in [(3, 2), (5, 2)] {
        let batch = sample_spectrum(p, r, 5, 300, 7, 1)?;
        let summary = summarize(&batch, p, r, 1);
        println!(
            "p={p} r={r}: predicted {}, attained {:?}, all pass {}",
            PredictedSet::new(p, r, 1),
            summary.attained,
            summary.all_pass()
        );
    }
    Ok(())
}
