//! Valuation spectrum of `R/J` for ideals `J = (N_G, x)` of `Z[Z/p^r]` with
//! `x = (sigma - 1) u + p^r eps`.
//!
//! Character valuations come from integer resultants against cyclotomic
//! polynomials; the cross-check computes `|Z[G]/(N_G, x)|` from a Hermite basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{FinAbGroup, Subgroup};
use crate::arith;
use crate::error::{Error, Result};
use crate::grouprings::GroupRingElem;
use crate::intmat::{self, Row};

/// `ord_p(n)` for nonzero `n`.
fn ord(p: u64, n: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        n = q;
        k += 1;
    }
}

/// `Phi_{p^i}(X) = sum_{j < p} X^{j p^{i-1}}`, lowest degree first.
pub fn cyclotomic_prime_power(p: u64, i: u32) -> Vec<BigInt> {
    let step = p.pow(i - 1) as usize;
    let mut c = vec![BigInt::zero(); step * (p as usize - 1) + 1];
    for j in 0..p as usize {
        c[j * step] = BigInt::one();
    }
    c
}

/// `Res(phi, f)` for monic `phi`, as the determinant of multiplication by `f`
/// on `Z[X]/(phi)`.
pub fn resultant_monic(phi: &[BigInt], f: &[BigInt]) -> BigInt {
    let d = phi.len() - 1;
    let reduce = |mut v: Vec<BigInt>| {
        for k in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if !c.is_zero() {
                for j in 0..d {
                    v[k - d + j] -= &c * &phi[j];
                }
            }
        }
        v.truncate(d);
        v.resize(d, BigInt::zero());
        v
    };
    let mut row = reduce(f.to_vec());
    let mut m: Vec<Row> = Vec::with_capacity(d);
    for _ in 0..d {
        m.push(row.clone());
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(row);
        row = reduce(shifted);
    }
    intmat::det(&m)
}

/// `(p, r)` for `G = Z/p^r`.
fn cyclic_p_power(g: &FinAbGroup) -> Result<(u64, u32)> {
    let n = g.order();
    match arith::factorize(n).as_slice() {
        [(p, r)] if g.is_cyclic() => Ok((*p, *r)),
        _ => Err(Error::Scope(format!("expected a cyclic group of prime-power order, got {g}"))),
    }
}

fn poly(x: &GroupRingElem) -> Result<Vec<BigInt>> {
    x.to_poly()
}

/// `ord_p Res(Phi_{p^i}, f_x)`, the normalized valuation of `chi_i(x)` in
/// `Q_p(mu_{p^i})`.
pub fn char_valuation(x: &GroupRingElem, i: u32) -> Result<u32> {
    let (p, r) = cyclic_p_power(x.group())?;
    if i == 0 || i > r {
        return Err(Error::Precondition(format!("character index {i} outside 1..={r}")));
    }
    ord(p, &resultant_monic(&cyclotomic_prime_power(p, i), &poly(x)?)).ok_or(Error::DegenerateCharacter { index: i })
}

/// `ord_p |Z[G]/(N_G, x)|`, read off Hermite bases of `(N_G, x) + p^k Z[G]`
/// for `k = 8, 16, ...` until `|M/p^k M| = |M/p^{2k} M|`, which forces
/// `p^k` to kill the `p`-part of `M = Z[G]/(N_G, x)`.
pub fn snf_total(x: &GroupRingElem) -> Result<u32> {
    let g = x.group();
    let (p, _) = cyclic_p_power(g)?;
    let n = g.order() as usize;
    let mut rows = GroupRingElem::norm_element(&Subgroup::full(g)).translates();
    rows.extend(x.translates());
    let size = |k: usize| {
        let moduli = vec![num_traits::pow(BigInt::from(p), k); n];
        ord(p, &intmat::diagonal_product(&intmat::hnf(&rows, n, Some(&moduli)))).expect("p-power index")
    };
    let mut k = 8;
    let mut prev = size(k);
    while k < 4096 {
        let next = size(2 * k);
        if next == prev {
            return Ok(prev);
        }
        prev = next;
        k *= 2;
    }
    let rank = intmat::hnf(&rows, n, None).len();
    Err(Error::NotFullRank { rank, expected: n })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedSet {
    pub p: u64,
    pub r: u32,
    pub n: u32,
}

impl PredictedSet {
    pub fn new(p: u64, r: u32, n: u32) -> Self {
        Self { p, r, n }
    }

    pub fn contains(&self, v: u64) -> bool {
        let (r, n, p) = (self.r as u64, self.n as u64, self.p);
        let top = r * (n + p - 1);
        v > top || (v >= r * n && v.is_multiple_of(r))
    }
}

impl std::fmt::Display for PredictedSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (r, n, p) = (self.r as u64, self.n as u64, self.p);
        let low: Vec<String> = (n..n + p).map(|k| (r * k).to_string()).collect();
        write!(f, "{{{}}} u {{>={}}}", low.join(","), r * (n + p - 1) + 1)
    }
}

pub fn predicted_membership(v: u64, p: u64, r: u32, n: u32) -> bool {
    PredictedSet::new(p, r, n).contains(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSample {
    pub p: u64,
    pub r: u32,
    /// Coefficients of `u` on `1, sigma, ..., sigma^{p^r - 1}`.
    pub u: Vec<i64>,
    pub epsilon: i64,
    /// `c_i = ord chi_i(x)`, `i = 1..r`.
    pub c: Vec<u32>,
    /// `a_i = ord chi_i(u)`; `None` when `chi_i(u) = 0`.
    pub a: Vec<Option<u32>>,
    pub total: u32,
    pub snf_total: u32,
    pub member: bool,
    /// Degenerate draws discarded before this sample.
    pub rejections: u32,
}

fn group_for(p: u64, r: u32) -> Result<FinAbGroup> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} must be an odd prime")));
    }
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    FinAbGroup::cyclic(p.pow(r) as i64)
}

/// `x = (sigma - 1) u + p^r eps`.
pub fn build_x(g: &FinAbGroup, u: &GroupRingElem, p: u64, r: u32, epsilon: i64) -> GroupRingElem {
    let sigma = GroupRingElem::basis(g, &g.generator(0));
    let shift = &sigma - &GroupRingElem::one(g);
    &(&shift * u) + &GroupRingElem::scalar(g, BigInt::from(p.pow(r)) * epsilon)
}

impl SpectrumSample {
    /// Evaluates one `u`; fails with a degenerate-character error when some
    /// `chi_i(x)` vanishes.
    pub fn evaluate(p: u64, r: u32, u: Vec<i64>, epsilon: i64) -> Result<Self> {
        let g = group_for(p, r)?;
        let ue = GroupRingElem::from_coeffs(&g, u.iter().map(|&c| BigInt::from(c)).collect())?;
        let x = build_x(&g, &ue, p, r, epsilon);
        let c = (1..=r).map(|i| char_valuation(&x, i)).collect::<Result<Vec<u32>>>()?;
        let a = (1..=r)
            .map(|i| match char_valuation(&ue, i) {
                Ok(v) => Ok(Some(v)),
                Err(Error::DegenerateCharacter { .. }) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?;
        let total = c.iter().sum();
        let snf_total = snf_total(&x)?;
        let member = predicted_membership(total as u64, p, r, 1);
        Ok(Self { p, r, u, epsilon, c, a, total, snf_total, member, rejections: 0 })
    }

    pub fn oracle_agrees(&self) -> bool {
        self.total == self.snf_total
    }

    pub fn x(&self) -> GroupRingElem {
        let g = group_for(self.p, self.r).expect("validated at construction");
        let u = GroupRingElem::from_coeffs(&g, self.u.iter().map(|&c| BigInt::from(c)).collect())
            .expect("length checked");
        build_x(&g, &u, self.p, self.r, self.epsilon)
    }
}

/// Draws `count` samples with `u` uniform in `[0, p^K)^{p^r}`. Each sample
/// uses its own stream of a generator seeded by `seed`, so the result does
/// not depend on scheduling.
pub fn sample_spectrum(p: u64, r: u32, coeff_exp: u32, count: usize, seed: u64, epsilon: i64) -> Result<Vec<SpectrumSample>> {
    let g = group_for(p, r)?;
    if epsilon.rem_euclid(p as i64) == 0 {
        return Err(Error::Precondition("epsilon must be prime to p".into()));
    }
    let n = g.order() as usize;
    let bound = p
        .checked_pow(coeff_exp)
        .filter(|&b| b <= i64::MAX as u64)
        .ok_or_else(|| Error::Precondition(format!("p^K = {p}^{coeff_exp} exceeds the coefficient range")))?
        as i64;
    (0..count)
        .into_par_iter()
        .map(|idx| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(idx as u64);
            let mut rejections = 0;
            loop {
                let u: Vec<i64> = (0..n).map(|_| rng.gen_range(0..bound)).collect();
                match SpectrumSample::evaluate(p, r, u, epsilon) {
                    Ok(mut s) => {
                        s.rejections = rejections;
                        return Ok(s);
                    }
                    Err(Error::DegenerateCharacter { .. }) | Err(Error::NotFullRank { .. }) => rejections += 1,
                    Err(e) => return Err(e),
                }
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    /// `aug(x) = p^r eps` with `eps` prime to `p`.
    pub augmentation: bool,
    /// `min a_i < p - 1` forces `a_1 = ... = a_r`.
    pub dichotomy: bool,
    /// Small case: `total = r (1 + a_1)` lies in `{r, ..., (p-1) r}`.
    pub small_case: Option<bool>,
    /// Large case: every `c_i >= p` and `total >= p r`.
    pub large_case: Option<bool>,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.augmentation && self.dichotomy && self.small_case.unwrap_or(true) && self.large_case.unwrap_or(true)
    }
}

pub fn verify_claims(s: &SpectrumSample) -> ClaimReport {
    let p = s.p;
    let r = s.r as u64;
    let aug = s.x().augmentation();
    let pr = BigInt::from(p.pow(s.r));
    let augmentation = aug.is_multiple_of(&pr) && !(&aug / &pr).is_multiple_of(&BigInt::from(p));

    let vals: Vec<u64> = s.a.iter().map(|a| a.map_or(u64::MAX, u64::from)).collect();
    let min = vals.iter().copied().min().unwrap_or(u64::MAX);
    let small = min < p - 1;
    let dichotomy = !small || vals.iter().all(|&a| a == vals[0]);
    let small_case = small.then(|| {
        let t = s.total as u64;
        t == r * (1 + vals[0]) && t >= r && t <= (p - 1) * r
    });
    let large_case = (!small).then(|| s.c.iter().all(|&c| c as u64 >= p) && s.total as u64 >= p * r);
    ClaimReport { augmentation, dichotomy, small_case, large_case }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSummary {
    pub p: u64,
    pub r: u32,
    pub n: u32,
    pub samples: usize,
    pub histogram: BTreeMap<u32, u64>,
    pub attained: Vec<u32>,
    pub oracle_passes: usize,
    pub membership_passes: usize,
    pub claim_passes: usize,
    pub rejections: u64,
}

impl SpectrumSummary {
    pub fn all_pass(&self) -> bool {
        self.oracle_passes == self.samples && self.membership_passes == self.samples && self.claim_passes == self.samples
    }
}

/// Aggregates a batch; membership is tested against the set for `n` split
/// ramified primes.
pub fn summarize(samples: &[SpectrumSample], p: u64, r: u32, n: u32) -> SpectrumSummary {
    let set = PredictedSet::new(p, r, n);
    let mut histogram = BTreeMap::new();
    for s in samples {
        *histogram.entry(s.total).or_insert(0) += 1;
    }
    SpectrumSummary {
        p,
        r,
        n,
        samples: samples.len(),
        attained: histogram.keys().copied().collect(),
        histogram,
        oracle_passes: samples.iter().filter(|s| s.oracle_agrees()).count(),
        membership_passes: samples.iter().filter(|s| set.contains(s.total as u64)).count(),
        claim_passes: samples.iter().filter(|s| verify_claims(s).holds()).count(),
        rejections: samples.iter().map(|s| s.rejections as u64).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Sylvester-matrix resultant, an independent oracle.
    fn sylvester(f: &[BigInt], g: &[BigInt]) -> BigInt {
        let trim = |v: &[BigInt]| {
            let mut v = v.to_vec();
            while v.len() > 1 && v.last().unwrap().is_zero() {
                v.pop();
            }
            v
        };
        let (f, g) = (trim(f), trim(g));
        let (m, n) = (f.len() - 1, g.len() - 1);
        let size = m + n;
        let mut rows = Vec::new();
        for k in 0..n {
            let mut row = vec![BigInt::zero(); size];
            for (j, c) in f.iter().rev().enumerate() {
                row[k + j] = c.clone();
            }
            rows.push(row);
        }
        for k in 0..m {
            let mut row = vec![BigInt::zero(); size];
            for (j, c) in g.iter().rev().enumerate() {
                row[k + j] = c.clone();
            }
            rows.push(row);
        }
        intmat::det(&rows)
    }

    fn elem(p: u64, r: u32, coeffs: &[i64]) -> GroupRingElem {
        let g = FinAbGroup::cyclic(p.pow(r) as i64).unwrap();
        let mut c = z(coeffs);
        c.resize(g.order() as usize, BigInt::zero());
        GroupRingElem::from_coeffs(&g, c).unwrap()
    }

    #[test]
    fn resultant_matches_sylvester() {
        let phi = cyclotomic_prime_power(3, 2);
        for f in [z(&[9]), z(&[-1, 1]), z(&[2, 0, 5, -3, 1]), z(&[7, 1, 0, 0, 0, 0, 0, 0, 4])] {
            assert_eq!(resultant_monic(&phi, &f).abs(), sylvester(&phi, &f).abs());
        }
    }

    #[test]
    fn character_valuations() {
        assert_eq!(char_valuation(&elem(3, 2, &[9]), 1).unwrap(), 4);
        assert_eq!(char_valuation(&elem(3, 2, &[9]), 2).unwrap(), 12);
        for i in 1..=3 {
            assert_eq!(char_valuation(&elem(3, 3, &[-1, 1]), i).unwrap(), 1);
        }
        let x = elem(3, 2, &[8, 1]);
        assert_eq!((char_valuation(&x, 1).unwrap(), char_valuation(&x, 2).unwrap()), (1, 1));
        assert_eq!(char_valuation(&elem(3, 2, &[1, 1, 1]), 1), Err(Error::DegenerateCharacter { index: 1 }));
    }

    #[test]
    fn worked_samples() {
        let s = SpectrumSample::evaluate(3, 2, vec![0; 9], 1).unwrap();
        assert_eq!((s.c.clone(), s.total, s.snf_total), (vec![4, 12], 16, 16));
        let mut one = vec![0; 9];
        one[0] = 1;
        let s = SpectrumSample::evaluate(3, 2, one, 1).unwrap();
        assert_eq!((s.total, s.snf_total), (2, 2));
        let mut shift = vec![0; 9];
        shift[0] = -1;
        shift[1] = 1;
        let s = SpectrumSample::evaluate(3, 2, shift, 1).unwrap();
        assert_eq!((s.total, s.snf_total), (4, 4));
        assert!(verify_claims(&s).holds());

        // u = (sigma - 1)^2 puts every a_i at p - 1
        let mut sq = vec![0; 9];
        sq[0] = 1;
        sq[1] = -2;
        sq[2] = 1;
        let s = SpectrumSample::evaluate(3, 2, sq, 1).unwrap();
        assert_eq!(s.a, vec![Some(2), Some(2)]);
        assert_eq!((s.c.clone(), s.total), (vec![3, 3], 6));
        assert_eq!(verify_claims(&s).large_case, Some(true));

        let s = SpectrumSample::evaluate(3, 2, vec![3, 6, 0, 0, 0, 0, 0, 0, 0], 1).unwrap();
        assert!(s.a.iter().all(|a| a.unwrap() >= 2));
        assert!(verify_claims(&s).large_case.is_some());
    }

    #[test]
    fn membership() {
        assert!(!predicted_membership(5, 3, 2, 1));
        assert!(predicted_membership(6, 3, 2, 1));
        assert!(predicted_membership(7, 3, 2, 1));
        assert!(!predicted_membership(1, 3, 2, 1));
        assert!(predicted_membership(4, 3, 2, 2));
        assert!(!predicted_membership(7, 3, 2, 2));
        assert!(predicted_membership(9, 3, 2, 2));
        assert!((1..20).all(|v| predicted_membership(v, 3, 1, 1)));
        assert_eq!(PredictedSet::new(3, 2, 1).to_string(), "{2,4,6} u {>=7}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_spectrum(3, 2, 5, 40, 7, 1).unwrap();
        let b = sample_spectrum(3, 2, 5, 40, 7, 1).unwrap();
        assert_eq!(a, b);
        let c = sample_spectrum(3, 2, 5, 40, 8, 1).unwrap();
        assert_ne!(a, c);
        let summary = summarize(&a, 3, 2, 1);
        assert!(summary.all_pass());
        assert!(matches!(sample_spectrum(2, 2, 5, 1, 0, 1), Err(Error::Precondition(_))));
    }
}
