//! The index sets `S~`, `S`, `S_p`, `T`, the structure map
//! `beta: N^S -> N^T`, and the freeness analysis of its image.
//!
//! Subgroups of the maximal `p`-quotient `G_p` are identified with subgroups
//! of the `p`-Sylow subgroup `G_(p)` through the isomorphism `G_(p) -> G_p`;
//! the image of `I` in `G_p` then corresponds to `I ∩ G_(p)`.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{enumerate_subgroups, FinAbGroup, GroupElement, Subgroup};
use crate::arith;
use crate::error::{Error, Result};

type Bits = Vec<u64>;

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn count(a: &Bits) -> u64 {
    a.iter().map(|x| x.count_ones() as u64).sum()
}

fn members(a: &Bits) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(w, &x)| (0..64).filter(move |b| x >> b & 1 == 1).map(move |b| w * 64 + b))
}

/// Subgroup lattice of `G` with every subgroup stored as a bitset over the
/// lexicographically ordered elements.
#[derive(Clone, Debug)]
struct Lattice {
    group: FinAbGroup,
    subs: Vec<Subgroup>,
    bits: Vec<Bits>,
    orders: Vec<u64>,
    lookup: HashMap<Bits, usize>,
    elem_order: Vec<u64>,
    cyclic_subs: Vec<usize>,
    full: usize,
    /// `p -> index of the p-Sylow subgroup of G`.
    primary: BTreeMap<u64, usize>,
}

impl Lattice {
    fn new(g: &FinAbGroup, bound: u64) -> Result<Self> {
        let subs = enumerate_subgroups(g, bound)?;
        let n = g.order() as usize;
        let words = n.div_ceil(64);
        let elems: Vec<GroupElement> = g.elements().collect();
        let elem_order: Vec<u64> = elems.iter().map(|x| g.element_order(x)).collect();
        let bits: Vec<Bits> = subs
            .iter()
            .map(|h| {
                let mut set = vec![0usize];
                for x in h.generators() {
                    let mut next = Vec::with_capacity(set.len() * g.element_order(&x) as usize);
                    let mut seen = vec![false; n];
                    for &s in &set {
                        let mut cur = elems[s].clone();
                        loop {
                            let idx = g.index_of(&cur);
                            if seen[idx] {
                                break;
                            }
                            seen[idx] = true;
                            next.push(idx);
                            cur = g.add(&cur, &x);
                        }
                    }
                    set = next;
                }
                let mut b = vec![0u64; words];
                for s in set {
                    b[s / 64] |= 1 << (s % 64);
                }
                b
            })
            .collect();
        let orders: Vec<u64> = bits.iter().map(count).collect();
        let lookup: HashMap<Bits, usize> = bits.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let mut lat = Self {
            group: g.clone(),
            subs,
            bits,
            orders,
            lookup,
            elem_order,
            cyclic_subs: Vec::new(),
            full: 0,
            primary: BTreeMap::new(),
        };
        lat.cyclic_subs = (0..lat.subs.len()).filter(|&i| lat.is_cyclic(i)).collect();
        lat.full = lat.orders.iter().position(|&o| o == g.order()).expect("G is a subgroup of itself");
        for p in arith::prime_divisors(g.order()) {
            let mut b = vec![0u64; words];
            for (i, &o) in lat.elem_order.iter().enumerate() {
                if arith::p_part(p, o) == o {
                    b[i / 64] |= 1 << (i % 64);
                }
            }
            lat.primary.insert(p, lat.lookup[&b]);
        }
        Ok(lat)
    }

    fn is_cyclic(&self, i: usize) -> bool {
        members(&self.bits[i]).map(|x| self.elem_order[x]).max() == Some(self.orders[i])
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.lookup[&and(&self.bits[a], &self.bits[b])]
    }

    fn le(&self, a: usize, b: usize) -> bool {
        subset(&self.bits[a], &self.bits[b])
    }

    /// `big / small` is cyclic, for `small ⊆ big`.
    fn quotient_cyclic(&self, small: usize, big: usize) -> bool {
        let target = self.orders[big];
        self.cyclic_subs.iter().any(|&c| {
            self.le(c, big) && {
                let meet = count(&and(&self.bits[small], &self.bits[c]));
                self.orders[small] * self.orders[c] / meet == target
            }
        })
    }

    fn is_elementary(&self, i: usize) -> bool {
        let noncyclic = self.primary.values().filter(|&&s| !self.is_cyclic(self.meet(i, s))).count();
        noncyclic <= 1
    }

    fn sylow(&self, i: usize, p: u64) -> usize {
        self.meet(i, self.primary[&p])
    }
}

/// A pair `(I, phi)` of `S~`; `phi` is the canonical lift of its coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIV {
    pub i: Subgroup,
    pub phi: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairID {
    pub i: Subgroup,
    pub d: Subgroup,
}

impl PairID {
    pub fn new(i: &Subgroup, d: &Subgroup) -> Result<Self> {
        if i.is_trivial() || !i.is_elementary() {
            return Err(Error::Precondition("I must be nontrivial and elementary".into()));
        }
        if !i.is_subgroup_of(d) {
            return Err(Error::Containment);
        }
        if !d.quotient_structure(i)?.is_cyclic() {
            return Err(Error::Precondition("D/I must be cyclic".into()));
        }
        Ok(Self { i: i.clone(), d: d.clone() })
    }
}

/// A tuple `(p, H, I*, D*)` of `T`, with `I*` and `D*` inside the
/// `p`-Sylow subgroup of `G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TTuple {
    pub p: u64,
    pub h: Subgroup,
    pub istar: Subgroup,
    pub dstar: Subgroup,
}

/// Element of `N^T`, indexed by the enumeration order of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonoidVector(pub Vec<u32>);

impl MonoidVector {
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other <= self` coordinatewise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Self)
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| self.0[k] != 0).collect()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }
}

#[derive(Clone, Debug)]
pub struct MonoidSets {
    lattice: Lattice,
    s_tilde: Vec<PairIV>,
    s_tilde_to_s: Vec<usize>,
    s: Vec<(usize, usize)>,
    s_p: BTreeMap<u64, Vec<(usize, usize)>>,
    t: Vec<(u64, usize, usize, usize)>,
    t_index: HashMap<(u64, usize, usize, usize), usize>,
    h_for_p: BTreeMap<u64, Vec<usize>>,
    s_prime: Vec<usize>,
    s_double_prime: Vec<usize>,
}

pub fn build_sets(g: &FinAbGroup, bound: u64) -> Result<MonoidSets> {
    let lat = Lattice::new(g, bound)?;
    let nsub = lat.subs.len();
    let candidates_i: Vec<usize> = (0..nsub).filter(|&i| lat.orders[i] > 1 && lat.is_elementary(i)).collect();

    let mut s = Vec::new();
    for &i in &candidates_i {
        for d in 0..nsub {
            if lat.le(i, d) && lat.quotient_cyclic(i, d) {
                s.push((i, d));
            }
        }
    }
    let s_index: HashMap<(usize, usize), usize> = s.iter().enumerate().map(|(k, &x)| (x, k)).collect();

    let n = g.order() as usize;
    let elems: Vec<GroupElement> = g.elements().collect();
    let mut s_tilde = Vec::new();
    let mut s_tilde_to_s = Vec::new();
    for &i in &candidates_i {
        let ielems: Vec<usize> = members(&lat.bits[i]).collect();
        let mut assigned = vec![false; n];
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            for &h in &ielems {
                assigned[g.index_of(&g.add(&elems[x], &elems[h]))] = true;
            }
            let mut dbits = vec![0u64; n.div_ceil(64)];
            for c in members(&cyclic_bits(g, &elems, x)) {
                for &h in &ielems {
                    let idx = g.index_of(&g.add(&elems[c], &elems[h]));
                    dbits[idx / 64] |= 1 << (idx % 64);
                }
            }
            let d = lat.lookup[&dbits];
            s_tilde.push(PairIV { i: lat.subs[i].clone(), phi: elems[x].clone() });
            s_tilde_to_s.push(s_index[&(i, d)]);
        }
    }

    let mut s_p = BTreeMap::new();
    let mut h_for_p = BTreeMap::new();
    let mut t = Vec::new();
    for (&p, &gp) in &lat.primary {
        let pairs: Vec<(usize, usize)> = (0..nsub)
            .filter(|&a| lat.orders[a] > 1 && lat.le(a, gp))
            .flat_map(|a| (0..nsub).map(move |b| (a, b)))
            .filter(|&(a, b)| lat.le(a, b) && lat.le(b, gp) && lat.quotient_cyclic(a, b))
            .collect();
        let hs: Vec<usize> = (0..nsub)
            .filter(|&h| lat.le(gp, h) && lat.quotient_cyclic(h, lat.full))
            .collect();
        for &h in &hs {
            for &(a, b) in &pairs {
                t.push((p, h, a, b));
            }
        }
        s_p.insert(p, pairs);
        h_for_p.insert(p, hs);
    }
    let t_index = t.iter().enumerate().map(|(k, &x)| (x, k)).collect();

    let prime_power = |i: usize| arith::is_prime_power(lat.orders[i]);
    let s_prime = (0..s.len()).filter(|&k| !lat.is_cyclic(s[k].1) || prime_power(s[k].0)).collect();
    let s_double_prime = (0..s.len()).filter(|&k| prime_power(s[k].0)).collect();

    Ok(MonoidSets { lattice: lat, s_tilde, s_tilde_to_s, s, s_p, t, t_index, h_for_p, s_prime, s_double_prime })
}

fn cyclic_bits(g: &FinAbGroup, elems: &[GroupElement], x: usize) -> Bits {
    let mut b = vec![0u64; (g.order() as usize).div_ceil(64)];
    let mut cur = g.identity();
    loop {
        let idx = g.index_of(&cur);
        if b[idx / 64] >> (idx % 64) & 1 == 1 {
            return b;
        }
        b[idx / 64] |= 1 << (idx % 64);
        cur = g.add(&cur, &elems[x]);
    }
}

impl MonoidSets {
    pub fn group(&self) -> &FinAbGroup {
        &self.lattice.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.lattice.subs
    }

    pub fn s_tilde(&self) -> &[PairIV] {
        &self.s_tilde
    }

    /// Position in `S` of the image `(I, I + <phi>)` of each element of `S~`.
    pub fn s_tilde_projection(&self) -> &[usize] {
        &self.s_tilde_to_s
    }

    pub fn s(&self) -> Vec<PairID> {
        self.s.iter().map(|&(i, d)| self.pair(i, d)).collect()
    }

    pub fn s_len(&self) -> usize {
        self.s.len()
    }

    pub fn s_p(&self) -> BTreeMap<u64, Vec<PairID>> {
        self.s_p.iter().map(|(&p, v)| (p, v.iter().map(|&(a, b)| self.pair(a, b)).collect())).collect()
    }

    pub fn s_p_counts(&self) -> BTreeMap<u64, usize> {
        self.s_p.iter().map(|(&p, v)| (p, v.len())).collect()
    }

    pub fn t(&self) -> Vec<TTuple> {
        let subs = &self.lattice.subs;
        self.t
            .iter()
            .map(|&(p, h, a, b)| TTuple { p, h: subs[h].clone(), istar: subs[a].clone(), dstar: subs[b].clone() })
            .collect()
    }

    pub fn t_len(&self) -> usize {
        self.t.len()
    }

    /// Positions in `S` of the pairs with `D` noncyclic or `#I` a prime power.
    pub fn s_prime(&self) -> &[usize] {
        &self.s_prime
    }

    /// Positions in `S` of the pairs with `#I` a prime power.
    pub fn s_double_prime(&self) -> &[usize] {
        &self.s_double_prime
    }

    fn pair(&self, i: usize, d: usize) -> PairID {
        PairID { i: self.lattice.subs[i].clone(), d: self.lattice.subs[d].clone() }
    }

    fn sub_index(&self, h: &Subgroup) -> Result<usize> {
        self.lattice.subs.binary_search(h).map_err(|_| Error::ParentMismatch)
    }

    pub fn position(&self, pair: &PairID) -> Result<usize> {
        let key = (self.sub_index(&pair.i)?, self.sub_index(&pair.d)?);
        self.s.iter().position(|&x| x == key).ok_or_else(|| Error::Precondition("pair is not in S".into()))
    }

    fn beta_raw(&self, i: usize, d: usize) -> MonoidVector {
        let lat = &self.lattice;
        let mut v = MonoidVector::zero(self.t.len());
        for &p in lat.primary.keys() {
            let istar = lat.sylow(i, p);
            if lat.orders[istar] == 1 {
                continue;
            }
            let dstar = lat.sylow(d, p);
            for &h in &self.h_for_p[&p] {
                if lat.le(d, h) {
                    v.0[self.t_index[&(p, h, istar, dstar)]] += 1;
                }
            }
        }
        v
    }

    /// `beta` of the `k`-th element of `S`.
    pub fn beta_at(&self, k: usize) -> MonoidVector {
        let (i, d) = self.s[k];
        self.beta_raw(i, d)
    }

    pub fn beta(&self, pair: &PairID) -> Result<MonoidVector> {
        Ok(self.beta_at(self.position(pair)?))
    }

    /// Checks `beta((I, D)) = sum_{p | #I} beta((I_(p), D))` for one pair
    /// with `D` cyclic.
    fn sylow_decomposition_holds(&self, k: usize) -> bool {
        let (i, d) = self.s[k];
        let lat = &self.lattice;
        let mut acc = MonoidVector::zero(self.t.len());
        for &p in lat.primary.keys() {
            let ip = lat.sylow(i, p);
            if lat.orders[ip] > 1 {
                if !self.s.contains(&(ip, d)) {
                    return false;
                }
                acc = acc.add(&self.beta_raw(ip, d));
            }
        }
        acc == self.beta_at(k)
    }

    /// For every subgroup `D`, the intersection of all `H ⊇ D` with `G/H`
    /// cyclic is `D` itself. Returns the number of subgroups passing.
    fn subgroup_recovery(&self) -> usize {
        let lat = &self.lattice;
        let cocyclic: Vec<usize> = (0..lat.subs.len()).filter(|&h| lat.quotient_cyclic(h, lat.full)).collect();
        (0..lat.subs.len())
            .filter(|&d| {
                let meet = cocyclic
                    .iter()
                    .filter(|&&h| lat.le(d, h))
                    .fold(lat.bits[lat.full].clone(), |acc, &h| and(&acc, &lat.bits[h]));
                meet == lat.bits[d]
            })
            .count()
    }
}

/// Membership in the submonoid generated by `gens`, by exhaustive search over
/// generators dominated by the target.
fn in_monoid(v: &MonoidVector, gens: &[MonoidVector], memo: &mut HashMap<MonoidVector, bool>) -> bool {
    if v.is_zero() {
        return true;
    }
    if let Some(&m) = memo.get(v) {
        return m;
    }
    let found = gens.iter().any(|g| g.leq(v) && in_monoid(&v.checked_sub(g).expect("dominated"), gens, memo));
    memo.insert(v.clone(), found);
    found
}

/// Whether `t` is a sum of two nonzero elements of the monoid generated by `gens`.
fn is_reducible(t: &MonoidVector, gens: &[MonoidVector]) -> bool {
    let below: Vec<MonoidVector> = gens.iter().filter(|g| g.leq(t) && !g.is_zero()).cloned().collect();
    let mut memo = HashMap::new();
    below
        .iter()
        .filter(|g| *g != t)
        .any(|g| in_monoid(&t.checked_sub(g).expect("dominated"), &below, &mut memo))
}

/// Images of all multisets of size at most `bound` over `indices` are distinct.
///
/// Multisets are compared through a linear 128-bit fingerprint of their image;
/// fingerprint collisions are re-checked on the exact vectors.
fn bounded_injective(sets: &MonoidSets, indices: &[usize], bound: u32) -> BoundedInjectivity {
    let images: Vec<MonoidVector> = indices.iter().map(|&k| sets.beta_at(k)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let weights: Vec<u128> = (0..sets.t_len()).map(|_| rng.gen()).collect();
    let prints: Vec<u128> = images
        .iter()
        .map(|v| v.0.iter().zip(&weights).fold(0u128, |h, (&c, &w)| h.wrapping_add(w.wrapping_mul(c as u128))))
        .collect();
    let exact = |ms: &[u32]| {
        ms.iter().fold(MonoidVector::zero(sets.t_len()), |acc, &k| acc.add(&images[k as usize]))
    };

    let mut seen: HashMap<u128, Vec<u32>> = HashMap::new();
    let mut vectors = 0u64;
    let mut injective = true;
    let mut stack: Vec<(u128, Vec<u32>)> = vec![(0, Vec::new())];
    while let Some((print, ms)) = stack.pop() {
        vectors += 1;
        if (ms.len() as u32) < bound {
            let start = ms.last().copied().unwrap_or(0) as usize;
            for (k, h) in prints.iter().enumerate().skip(start) {
                let mut next = ms.clone();
                next.push(k as u32);
                stack.push((print.wrapping_add(*h), next));
            }
        }
        match seen.get(&print) {
            Some(other) if injective => {
                if exact(other) == exact(&ms) {
                    injective = false;
                }
            }
            Some(_) => {}
            None => {
                seen.insert(print, ms);
            }
        }
    }
    BoundedInjectivity { bound, vectors, injective }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CardinalityFormulas {
    pub formula_s: u64,
    pub formula_t: u64,
    pub enumerated_s: u64,
    pub enumerated_t: u64,
}

impl CardinalityFormulas {
    pub fn agree(&self) -> bool {
        self.formula_s == self.enumerated_s && self.formula_t == self.enumerated_t
    }
}

/// Closed forms for `#S` and `#T` of a cyclic group, from the exponents of
/// its order.
pub fn formula_counts(order: u64) -> (u64, u64) {
    let e: Vec<u64> = arith::factorize(order).into_iter().map(|(_, e)| e as u64).collect();
    let s = e.iter().map(|&x| (x + 1) * (x + 2) / 2).product::<u64>() - e.iter().map(|&x| x + 1).product::<u64>();
    let t = e.iter().sum::<u64>() * e.iter().map(|&x| x + 1).product::<u64>() / 2;
    (s, t)
}

pub fn cardinality_formulas(g: &FinAbGroup, bound: u64) -> Result<CardinalityFormulas> {
    if !g.is_cyclic() {
        return Err(Error::Scope(format!("cardinality formulas need a cyclic group, got {g}")));
    }
    let sets = build_sets(g, bound)?;
    let (formula_s, formula_t) = formula_counts(g.order());
    Ok(CardinalityFormulas {
        formula_s,
        formula_t,
        enumerated_s: sets.s_len() as u64,
        enumerated_t: sets.t_len() as u64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "FREE")]
    Free,
    #[serde(rename = "NOT-FREE")]
    NotFree,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Free => "FREE",
            Verdict::NotFree => "NOT-FREE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub passed: u64,
}

impl Tally {
    fn of(results: impl Iterator<Item = bool>) -> Self {
        let (mut checked, mut passed) = (0, 0);
        for ok in results {
            checked += 1;
            passed += ok as u64;
        }
        Self { checked, passed }
    }

    pub fn ok(&self) -> bool {
        self.checked == self.passed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedInjectivity {
    pub bound: u32,
    pub vectors: u64,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetCounts {
    pub s_tilde: usize,
    pub s: usize,
    pub s_prime: usize,
    pub s_double_prime: usize,
    pub t: usize,
    pub s_p: BTreeMap<u64, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaEntry {
    pub i: Vec<Vec<i64>>,
    pub d: Vec<Vec<i64>>,
    pub in_s_prime: bool,
    /// Positions in `T` where the image is nonzero (all coefficients are 1).
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub group: Vec<i64>,
    pub order: u64,
    pub counts: SetCounts,
    pub beta: Vec<BetaEntry>,
    /// Sylow decompositions of `beta((I, D))` over all pairs with `D` cyclic.
    pub sylow_decompositions: Tally,
    pub injective_on_s_prime: bool,
    /// Images of `S'` that are irreducible in the image monoid.
    pub irreducible: Tally,
    /// Images of `S \ S'` that decompose.
    pub reducible_outside: Tally,
    pub bounded_injectivity: BoundedInjectivity,
    /// Same search on `S''`, recorded as evidence only.
    pub double_prime_injectivity: BoundedInjectivity,
    pub subgroup_recovery: Tally,
    pub cardinality_formulas: Option<CardinalityFormulas>,
    pub verdict: Verdict,
    pub rank: Option<usize>,
}

impl FreenessReport {
    /// Every cross-check that the theory predicts to hold for this group.
    pub fn all_checks_pass(&self) -> bool {
        let counts_ok = match self.verdict {
            Verdict::Free => self.counts.s_prime == self.counts.t && self.counts.s_double_prime == self.counts.t,
            Verdict::NotFree => self.counts.s_prime > self.counts.t && self.counts.s_double_prime == self.counts.t,
        };
        let injectivity_ok = self.verdict == Verdict::NotFree || self.bounded_injectivity.injective;
        counts_ok
            && injectivity_ok
            && self.sylow_decompositions.ok()
            && self.injective_on_s_prime
            && self.irreducible.ok()
            && self.reducible_outside.ok()
            && self.subgroup_recovery.ok()
            && self.cardinality_formulas.is_none_or(|c| c.agree())
    }
}

fn coords(h: &Subgroup) -> Vec<Vec<i64>> {
    h.generators().into_iter().map(|x| x.0).collect()
}

pub fn analyze_monoid(g: &FinAbGroup, bound: u32, enumeration_bound: u64) -> Result<FreenessReport> {
    if bound < 2 {
        return Err(Error::Precondition("injectivity bound must be at least 2".into()));
    }
    let sets = build_sets(g, enumeration_bound)?;
    let lat = &sets.lattice;
    let betas: Vec<MonoidVector> = (0..sets.s_len()).map(|k| sets.beta_at(k)).collect();
    let in_prime: HashSet<usize> = sets.s_prime.iter().copied().collect();

    let beta = sets
        .s
        .iter()
        .enumerate()
        .map(|(k, &(i, d))| BetaEntry {
            i: coords(&lat.subs[i]),
            d: coords(&lat.subs[d]),
            in_s_prime: in_prime.contains(&k),
            support: betas[k].support(),
        })
        .collect();

    let sylow_decompositions =
        Tally::of((0..sets.s_len()).filter(|&k| lat.is_cyclic(sets.s[k].1)).map(|k| sets.sylow_decomposition_holds(k)));

    let prime_images: HashSet<&MonoidVector> = sets.s_prime.iter().map(|&k| &betas[k]).collect();
    let injective_on_s_prime = prime_images.len() == sets.s_prime.len();

    let gens: Vec<MonoidVector> = {
        let mut v: Vec<MonoidVector> = prime_images.into_iter().cloned().collect();
        v.sort();
        v
    };
    let reducible: Vec<bool> = (0..sets.s_len()).into_par_iter().map(|k| is_reducible(&betas[k], &gens)).collect();
    let irreducible = Tally::of(sets.s_prime.iter().map(|&k| !reducible[k]));
    let reducible_outside = Tally::of((0..sets.s_len()).filter(|k| !in_prime.contains(k)).map(|k| reducible[k]));

    let bounded_injectivity = bounded_injective(&sets, &sets.s_prime, bound);
    let double_prime_injectivity = bounded_injective(&sets, &sets.s_double_prime, bound);
    let subgroup_recovery = Tally { checked: lat.subs.len() as u64, passed: sets.subgroup_recovery() as u64 };

    let cardinality_formulas = g.is_cyclic().then(|| {
        let (formula_s, formula_t) = formula_counts(g.order());
        CardinalityFormulas {
            formula_s,
            formula_t,
            enumerated_s: sets.s_len() as u64,
            enumerated_t: sets.t_len() as u64,
        }
    });
    let free = g.is_cyclic() || arith::is_prime_power(g.order()) || g.is_trivial();
    let verdict = if free { Verdict::Free } else { Verdict::NotFree };

    Ok(FreenessReport {
        group: g.factors().to_vec(),
        order: g.order(),
        counts: SetCounts {
            s_tilde: sets.s_tilde.len(),
            s: sets.s_len(),
            s_prime: sets.s_prime.len(),
            s_double_prime: sets.s_double_prime.len(),
            t: sets.t_len(),
            s_p: sets.s_p_counts(),
        },
        beta,
        sylow_decompositions,
        injective_on_s_prime,
        irreducible,
        reducible_outside,
        bounded_injectivity,
        double_prime_injectivity,
        subgroup_recovery,
        cardinality_formulas,
        verdict,
        rank: free.then_some(sets.t_len()),
    })
}
