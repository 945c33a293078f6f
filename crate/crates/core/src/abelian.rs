//! Finite abelian groups, their subgroup lattices and quotients.
//!
//! A group is stored by its invariant factors `d_1 | d_2 | ... | d_k` and an
//! element by its coordinate tuple with `coords[i]` in `[0, d_i)`. A subgroup
//! `H` is represented by the Hermite basis of its preimage lattice
//! `L = pi^{-1}(H)` where `diag(d) Z^k ⊆ L ⊆ Z^k`; equal subgroups have equal
//! bases, so the derived orderings give a canonical enumeration order.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::intmat::{self, Row};

/// Default cap on the order of groups whose subgroups are enumerated.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FinAbGroup {
    factors: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl FinAbGroup {
    /// Builds the group `Z/n_1 x ... x Z/n_k` in invariant-factor form. The
    /// input need not be a divisor chain.
    pub fn new(factors: &[i64]) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n <= 1) {
            return Err(Error::InvalidFactor(bad));
        }
        // Collect prime powers per prime, then deal them back out as a chain.
        let mut per_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &n in factors {
            for (p, e) in arith::factorize(n as u64) {
                per_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = per_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut chain = vec![1u64; len];
        for powers in per_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in powers.iter().enumerate() {
                chain[len - 1 - i] *= q;
            }
        }
        Ok(Self { factors: chain.into_iter().map(|x| x as i64).collect() })
    }

    pub fn trivial() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        if n == 1 { Ok(Self::trivial()) } else { Self::new(&[n]) }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&d| d as u64).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().map_or(1, |&d| d as u64)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// The `i`-th standard generator (a `1` in coordinate `i`).
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1 % self.factors[i];
        GroupElement(c)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn element(&self, coords: &[i64]) -> GroupElement {
        assert_eq!(coords.len(), self.rank(), "coordinate length mismatch");
        GroupElement(coords.iter().zip(&self.factors).map(|(&c, &d)| c.rem_euclid(d)).collect())
    }

    pub fn owns(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.factors).all(|(&c, &d)| (0..d).contains(&c))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter().zip(&b.0).zip(&self.factors).map(|((&x, &y), &d)| (x + y) % d).collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.factors).map(|(&x, &d)| (d - x) % d).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as i64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d / x.gcd(&d).max(1)) as u64)
            .map(|o| if o == 0 { 1 } else { o })
            .fold(1, arith::lcm)
    }

    /// Position of `a` in the lexicographic enumeration of elements.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter().zip(&self.factors).fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.factors[i] as usize;
            c[i] = (idx % d) as i64;
            idx /= d;
        }
        GroupElement(c)
    }

    /// All elements in lexicographic order of coordinates.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    fn diag_rows(&self) -> Vec<Row> {
        let k = self.rank();
        (0..k).map(|i| intmat::unit_row(k, i, BigInt::from(self.factors[i]))).collect()
    }

    fn moduli(&self) -> Vec<BigInt> {
        self.factors.iter().map(|&d| BigInt::from(d)).collect()
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    parent: FinAbGroup,
    basis: Vec<Vec<i64>>,
}

fn to_i64_rows(rows: &[Row]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("subgroup basis entry fits i64")).collect())
        .collect()
}

fn to_big_rows(rows: &[Vec<i64>]) -> Vec<Row> {
    intmat::from_i64(rows)
}

impl Subgroup {
    /// Subgroup generated by the given elements.
    pub fn generated(parent: &FinAbGroup, gens: &[GroupElement]) -> Result<Self> {
        if gens.iter().any(|g| !parent.owns(g)) {
            return Err(Error::ParentMismatch);
        }
        let k = parent.rank();
        let rows: Vec<Row> = gens.iter().map(|g| g.0.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let h = intmat::hnf(&rows, k, Some(&parent.moduli()));
        debug_assert_eq!(h.len(), k);
        Ok(Self { parent: parent.clone(), basis: to_i64_rows(&h) })
    }

    pub fn trivial(parent: &FinAbGroup) -> Self {
        Self::generated(parent, &[]).expect("trivial subgroup")
    }

    pub fn full(parent: &FinAbGroup) -> Self {
        Self::generated(parent, &parent.generators()).expect("full subgroup")
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    /// Hermite basis of the preimage lattice.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn order(&self) -> u64 {
        let index: u64 = (0..self.basis.len()).map(|i| self.basis[i][i] as u64).product();
        self.parent.order() / index
    }

    pub fn index(&self) -> u64 {
        self.parent.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent == other.parent { Ok(()) } else { Err(Error::ParentMismatch) }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        let v: Row = g.0.iter().map(|&x| BigInt::from(x)).collect();
        intmat::solve_echelon(&to_big_rows(&self.basis), &v).is_some()
    }

    /// Generators of the subgroup (basis rows read as group elements, identity dropped).
    pub fn generators(&self) -> Vec<GroupElement> {
        self.basis
            .iter()
            .map(|r| self.parent.element(r))
            .filter(|g| *g != self.parent.identity())
            .collect()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.parent.elements().filter(|g| self.contains(g)).collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let mut gens = self.generators();
        gens.extend(other.generators());
        Subgroup::generated(&self.parent, &gens)
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let small = if self.order() <= other.order() { self } else { other };
        let big = if self.order() <= other.order() { other } else { self };
        let gens: Vec<GroupElement> = small.elements().into_iter().filter(|g| big.contains(g)).collect();
        Subgroup::generated(&self.parent, &gens)
    }

    /// Isomorphism type of the subgroup as an abstract group.
    pub fn structure(&self) -> FinAbGroup {
        let lat = to_big_rows(&self.basis);
        let rel: Vec<Row> = self
            .parent
            .diag_rows()
            .iter()
            .map(|r| intmat::solve_echelon(&lat, r).expect("diag(d) lies in every preimage lattice"))
            .collect();
        factors_from_relations(&rel, self.basis.len())
    }

    /// Isomorphism type of `self / sub`.
    pub fn quotient_structure(&self, sub: &Subgroup) -> Result<FinAbGroup> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::ParentMismatch);
        }
        let lat = to_big_rows(&self.basis);
        let rel: Vec<Row> = to_big_rows(&sub.basis)
            .iter()
            .map(|r| intmat::solve_echelon(&lat, r).expect("sublattice"))
            .collect();
        Ok(factors_from_relations(&rel, self.basis.len()))
    }

    pub fn is_cyclic(&self) -> bool {
        self.structure().is_cyclic()
    }

    /// The `p`-Sylow subgroup.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let m = self.parent.exponent() / arith::p_part(p, self.parent.exponent());
        let gens: Vec<GroupElement> = self.generators().iter().map(|g| self.parent.mul(m as i64, g)).collect();
        Subgroup::generated(&self.parent, &gens).expect("same parent")
    }

    /// The product of all Sylow subgroups for primes other than `p`.
    pub fn prime_to_p_part(&self, p: u64) -> Subgroup {
        let m = arith::p_part(p, self.parent.exponent());
        let gens: Vec<GroupElement> = self.generators().iter().map(|g| self.parent.mul(m as i64, g)).collect();
        Subgroup::generated(&self.parent, &gens).expect("same parent")
    }

    pub fn classify(&self) -> Classification {
        let s = self.structure();
        let noncyclic: Vec<u64> = arith::prime_divisors(s.order())
            .into_iter()
            .filter(|&q| s.factors().iter().filter(|&&d| (d as u64).is_multiple_of(q)).count() > 1)
            .collect();
        let elementary_primes = match noncyclic.as_slice() {
            [] => ElementaryPrimes::All,
            [p] => ElementaryPrimes::Only(*p),
            _ => ElementaryPrimes::Never,
        };
        Classification {
            is_trivial: s.is_trivial(),
            is_cyclic: s.is_cyclic(),
            is_elementary: elementary_primes != ElementaryPrimes::Never,
            elementary_primes,
        }
    }

    pub fn is_elementary(&self) -> bool {
        self.classify().is_elementary
    }

    /// Quotient map `parent -> parent / self`.
    pub fn quotient(&self) -> QuotientData {
        QuotientData::new(self)
    }

    /// Lexicographically smallest element of the coset `g + self`.
    pub fn canonical_lift(&self, g: &GroupElement) -> GroupElement {
        self.elements()
            .iter()
            .map(|h| self.parent.add(g, h))
            .min()
            .expect("nonempty coset")
    }
}

fn factors_from_relations(rel: &[Row], k: usize) -> FinAbGroup {
    let s = intmat::snf(rel, k);
    let factors: Vec<i64> = s
        .diag
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_i64().expect("finite quotient"))
        .collect();
    debug_assert!(factors.iter().all(|&d| d != 0));
    FinAbGroup { factors }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ElementaryPrimes {
    /// Every Sylow subgroup is cyclic: `p`-elementary for every prime `p`.
    All,
    /// Exactly one Sylow subgroup is noncyclic.
    Only(u64),
    Never,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_trivial: bool,
    pub is_cyclic: bool,
    pub is_elementary: bool,
    pub elementary_primes: ElementaryPrimes,
}

impl ElementaryPrimes {
    pub fn contains(&self, p: u64) -> bool {
        match self {
            ElementaryPrimes::All => true,
            ElementaryPrimes::Only(q) => *q == p,
            ElementaryPrimes::Never => false,
        }
    }
}

/// The projection `G -> G/K` together with a fixed set-theoretic section.
#[derive(Clone, Debug)]
pub struct QuotientData {
    kernel: Subgroup,
    quotient: FinAbGroup,
    v: Vec<Row>,
    v_inv: Vec<Row>,
    /// Columns of `x · V` that carry the nontrivial invariant factors.
    positions: Vec<usize>,
}

impl QuotientData {
    fn new(kernel: &Subgroup) -> Self {
        let k = kernel.parent.rank();
        let snf = intmat::snf(&to_big_rows(&kernel.basis), k);
        let mut positions = Vec::new();
        let mut factors = Vec::new();
        for (i, d) in snf.diag.iter().enumerate() {
            if !d.is_one() {
                positions.push(i);
                factors.push(d.to_i64().expect("finite"));
            }
        }
        Self {
            kernel: kernel.clone(),
            quotient: FinAbGroup { factors },
            v: snf.v,
            v_inv: snf.v_inv,
            positions,
        }
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.kernel.parent
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn quotient(&self) -> &FinAbGroup {
        &self.quotient
    }

    pub fn project(&self, g: &GroupElement) -> GroupElement {
        let x: Row = g.0.iter().map(|&c| BigInt::from(c)).collect();
        let y = intmat::vec_mat(&x, &self.v);
        let coords: Vec<i64> = self
            .positions
            .iter()
            .zip(self.quotient.factors())
            .map(|(&i, &d)| y[i].mod_floor(&BigInt::from(d)).to_i64().expect("small"))
            .collect();
        GroupElement(coords)
    }

    pub fn section(&self, q: &GroupElement) -> GroupElement {
        let k = self.parent().rank();
        let mut y = intmat::zero_row(k);
        for (&i, &c) in self.positions.iter().zip(&q.0) {
            y[i] = BigInt::from(c);
        }
        let x = intmat::vec_mat(&y, &self.v_inv);
        let coords: Vec<i64> = x
            .iter()
            .zip(self.parent().factors())
            .map(|(c, &d)| c.mod_floor(&BigInt::from(d)).to_i64().expect("small"))
            .collect();
        GroupElement(coords)
    }

    /// Image of a subgroup of the parent in the quotient.
    pub fn image_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.parent != *self.parent() {
            return Err(Error::ParentMismatch);
        }
        let gens: Vec<GroupElement> = h.generators().iter().map(|g| self.project(g)).collect();
        Subgroup::generated(&self.quotient, &gens)
    }

    /// Preimage in the parent of a subgroup of the quotient.
    pub fn preimage(&self, k: &Subgroup) -> Result<Subgroup> {
        if k.parent != self.quotient {
            return Err(Error::ParentMismatch);
        }
        let mut gens: Vec<GroupElement> = k.generators().iter().map(|q| self.section(q)).collect();
        gens.extend(self.kernel.generators());
        Subgroup::generated(self.parent(), &gens)
    }
}

/// `G -> G/(prime-to-p part)`, the maximal `p`-quotient.
pub fn max_p_quotient(g: &FinAbGroup, p: u64) -> QuotientData {
    Subgroup::full(g).prime_to_p_part(p).quotient()
}

/// `G -> G/(p-Sylow)`, the maximal prime-to-`p` quotient.
pub fn max_prime_to_p_quotient(g: &FinAbGroup, p: u64) -> QuotientData {
    Subgroup::full(g).sylow(p).quotient()
}

/// All subgroups of `g`, each once, in canonical order.
pub fn enumerate_subgroups(g: &FinAbGroup, bound: u64) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::Capacity { order: g.order(), bound });
    }
    let cyclic: BTreeSet<Subgroup> = g
        .elements()
        .map(|x| Subgroup::generated(g, &[x]).expect("own element"))
        .collect();
    let mut all = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        for c in &cyclic {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let j = h.join(c).expect("same parent");
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    Ok(all.into_iter().collect())
}

/// Every abelian group of the given order, as invariant-factor lists.
pub fn groups_of_order(n: u64) -> Vec<FinAbGroup> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut acc: Vec<Vec<i64>> = vec![vec![]];
    for (p, e) in arith::factorize(n) {
        let mut next = Vec::new();
        for part in partitions(e, e) {
            for base in &acc {
                let mut f = base.clone();
                f.extend(part.iter().map(|&k| p.pow(k) as i64));
                next.push(f);
            }
        }
        acc = next;
    }
    acc.into_iter().map(|f| FinAbGroup::new(&f).expect("valid factors")).collect()
}
