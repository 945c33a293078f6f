//! The integral group ring `Z[G]`, full-rank ideal lattices inside `Q[G]`
//! and finite `Z[G]`-modules given by presentations.
//!
//! Coefficient vectors are dense and indexed by the lexicographic element
//! enumeration of the group. Modules use row vectors: a group element acts
//! on `x in Z^k` by `x · A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::{FinAbGroup, GroupElement, QuotientData, Subgroup};
use crate::error::{Error, Result};
use crate::intmat::{self, Row};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    group: FinAbGroup,
    coeffs: Vec<BigInt>,
}

/// `perm[j]` is the index of `e_j + g`.
fn translation(group: &FinAbGroup, g: &GroupElement) -> Vec<usize> {
    group.elements().map(|x| group.index_of(&group.add(&x, g))).collect()
}

impl GroupRingElem {
    pub fn zero(group: &FinAbGroup) -> Self {
        Self { group: group.clone(), coeffs: intmat::zero_row(group.order() as usize) }
    }

    pub fn scalar(group: &FinAbGroup, c: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[0] = c.into();
        x
    }

    pub fn one(group: &FinAbGroup) -> Self {
        Self::scalar(group, 1)
    }

    /// The basis element `[g]`.
    pub fn basis(group: &FinAbGroup, g: &GroupElement) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[group.index_of(g)] = BigInt::one();
        x
    }

    pub fn from_coeffs(group: &FinAbGroup, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != group.order() as usize {
            return Err(Error::GroupMismatch);
        }
        Ok(Self { group: group.clone(), coeffs })
    }

    /// Sum of `c · [g]` over the given terms.
    pub fn from_terms(group: &FinAbGroup, terms: &[(i64, &[i64])]) -> Self {
        let mut x = Self::zero(group);
        for (c, g) in terms {
            x.coeffs[group.index_of(&group.element(g))] += *c;
        }
        x
    }

    /// `N_I`, the sum of the elements of `I`.
    pub fn norm_element(i: &Subgroup) -> Self {
        let g = i.parent();
        let mut x = Self::zero(g);
        for h in i.elements() {
            x.coeffs[g.index_of(&h)] = BigInt::one();
        }
        x
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, g: &GroupElement) -> &BigInt {
        &self.coeffs[self.group.index_of(g)]
    }

    pub fn is_zero(&self) -> bool {
        intmat::is_zero_row(&self.coeffs)
    }

    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.group == other.group { Ok(()) } else { Err(Error::GroupMismatch) }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { group: self.group.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { group: self.group.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.group);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let perm = translation(&self.group, &self.group.element_at(i));
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[perm[j]] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { group: self.group.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `[g] · self`.
    pub fn translate(&self, g: &GroupElement) -> Self {
        let perm = translation(&self.group, g);
        let mut out = Self::zero(&self.group);
        for (j, b) in self.coeffs.iter().enumerate() {
            out.coeffs[perm[j]] = b.clone();
        }
        out
    }

    /// The involution induced by `g -> -g`.
    pub fn involution(&self) -> Self {
        let mut out = Self::zero(&self.group);
        for (j, b) in self.coeffs.iter().enumerate() {
            let g = self.group.element_at(j);
            out.coeffs[self.group.index_of(&self.group.neg(&g))] = b.clone();
        }
        out
    }

    /// Reduces every coefficient into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        Self { group: self.group.clone(), coeffs: self.coeffs.iter().map(|a| a.mod_floor(m)).collect() }
    }

    /// Image in `Z[G/K]` under the given quotient map.
    pub fn project(&self, q: &QuotientData) -> Result<Self> {
        if q.parent() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = Self::zero(q.quotient());
        for (j, b) in self.coeffs.iter().enumerate() {
            if !b.is_zero() {
                let y = q.project(&self.group.element_at(j));
                out.coeffs[q.quotient().index_of(&y)] += b;
            }
        }
        Ok(out)
    }

    /// Lifts an element of `Z[G/K]` along the section of `q`.
    pub fn lift(&self, q: &QuotientData) -> Result<Self> {
        if q.quotient() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = Self::zero(q.parent());
        for (j, b) in self.coeffs.iter().enumerate() {
            let x = q.section(&self.group.element_at(j));
            out.coeffs[q.parent().index_of(&x)] += b;
        }
        Ok(out)
    }

    /// The `|G|` translates `[g] · self`, in element order, as rows.
    pub fn translates(&self) -> Vec<Row> {
        self.group.elements().map(|g| self.translate(&g).coeffs).collect()
    }

    /// Polynomial coefficients of the image in `Z[X]/(X^n - 1)` for cyclic
    /// `G = Z/n` with generator `1`.
    pub fn to_poly(&self) -> Result<Vec<BigInt>> {
        if !self.group.is_cyclic() {
            return Err(Error::Scope("polynomial form needs a cyclic group".into()));
        }
        Ok(self.coeffs.clone())
    }
}

impl std::ops::Add for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: Self) -> GroupRingElem {
        self.try_add(rhs).expect("same group")
    }
}

impl std::ops::Sub for &GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, rhs: Self) -> GroupRingElem {
        self.try_sub(rhs).expect("same group")
    }
}

impl std::ops::Mul for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: Self) -> GroupRingElem {
        self.try_mul(rhs).expect("same group")
    }
}

impl std::ops::Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        self.scale(&BigInt::from(-1))
    }
}

impl std::fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = self.group.element_at(j);
            if j == 0 {
                parts.push(c.to_string());
            } else {
                parts.push(format!("{c}*{:?}", g.coords()));
            }
        }
        if parts.is_empty() { write!(f, "0") } else { write!(f, "{}", parts.join(" + ")) }
    }
}

/// A full-rank `Z[G]`-stable lattice `(1/d) · B` in `Q[G]`, where `B` is the
/// Hermite basis of an integer lattice and `d` is as small as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealLattice {
    group: FinAbGroup,
    denominator: BigInt,
    basis: Vec<Row>,
}

impl IdealLattice {
    /// The ideal `(1/denominator) · (gens)`.
    pub fn from_generators(gens: &[GroupRingElem], denominator: &BigInt) -> Result<Self> {
        let group = gens.first().map(|g| g.group.clone()).ok_or(Error::NotFullRank { rank: 0, expected: 0 })?;
        if gens.iter().any(|g| g.group != group) {
            return Err(Error::GroupMismatch);
        }
        let rows: Vec<Row> = gens.iter().flat_map(GroupRingElem::translates).collect();
        Self::from_rows(&group, &rows, denominator)
    }

    /// The lattice spanned by `rows / denominator`; rejected unless it is
    /// full rank and stable under `G`.
    pub fn from_rows(group: &FinAbGroup, rows: &[Row], denominator: &BigInt) -> Result<Self> {
        let n = group.order() as usize;
        if denominator.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let basis = intmat::full_rank_hnf(rows, n).map_err(|rank| Error::NotFullRank { rank, expected: n })?;
        let lat = Self::normalized(group, basis, denominator.abs());
        if !lat.is_stable() {
            return Err(Error::Precondition("lattice is not stable under the group action".into()));
        }
        Ok(lat)
    }

    fn normalized(group: &FinAbGroup, mut basis: Vec<Row>, mut den: BigInt) -> Self {
        let mut g = den.clone();
        for x in basis.iter().flatten() {
            g = g.gcd(x);
        }
        if !g.is_one() {
            den /= &g;
            for x in basis.iter_mut().flatten() {
                *x /= &g;
            }
        }
        Self { group: group.clone(), denominator: den, basis }
    }

    pub fn ring(group: &FinAbGroup) -> Self {
        let n = group.order() as usize;
        Self { group: group.clone(), denominator: BigInt::one(), basis: intmat::identity(n) }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    fn is_stable(&self) -> bool {
        let perms: Vec<Vec<usize>> = self.group.generators().iter().map(|g| translation(&self.group, g)).collect();
        self.basis.iter().all(|r| {
            perms.iter().all(|perm| {
                let mut moved = intmat::zero_row(r.len());
                for (j, c) in r.iter().enumerate() {
                    moved[perm[j]] = c.clone();
                }
                intmat::solve_echelon(&self.basis, &moved).is_some()
            })
        })
    }

    /// Whether `x / den` lies in the lattice.
    pub fn contains(&self, x: &GroupRingElem, den: &BigInt) -> bool {
        if x.group != self.group {
            return false;
        }
        // x/den in B/d  <=>  x*d in den*B  (both sides integral after scaling)
        let scaled: Row = x.coeffs.iter().map(|c| c * &self.denominator).collect();
        let target: Vec<Row> = self.basis.iter().map(|r| r.iter().map(|c| c * den).collect()).collect();
        intmat::solve_echelon(&target, &scaled).is_some()
    }

    /// `[Z[G] : L]` as a reduced fraction `(num, den)`; it is the product of
    /// the Hermite diagonal divided by `d^n`.
    pub fn index_in_ring(&self) -> (BigInt, BigInt) {
        let num = intmat::diagonal_product(&self.basis);
        let den = num_traits::pow(self.denominator.clone(), self.basis.len());
        let g = num.gcd(&den);
        (num / &g, den / g)
    }

    /// `(x / den) · L`.
    pub fn multiply(&self, x: &GroupRingElem, den: &BigInt) -> Result<Self> {
        if x.group != self.group {
            return Err(Error::GroupMismatch);
        }
        let mut rows = Vec::with_capacity(self.basis.len());
        for r in &self.basis {
            let y = GroupRingElem { group: self.group.clone(), coeffs: r.clone() };
            rows.push((&y * x).coeffs);
        }
        Self::from_rows(&self.group, &rows, &(den * &self.denominator))
    }

    fn rows_over(&self, common: &BigInt) -> Vec<Row> {
        let f = common / &self.denominator;
        self.basis.iter().map(|r| r.iter().map(|c| c * &f).collect()).collect()
    }

    /// `self + other`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let d = self.denominator.lcm(&other.denominator);
        let mut rows = self.rows_over(&d);
        rows.extend(other.rows_over(&d));
        Self::from_rows(&self.group, &rows, &d)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        if self.group != other.group {
            return false;
        }
        let d = self.denominator.lcm(&other.denominator);
        let big = other.rows_over(&d);
        self.rows_over(&d).iter().all(|r| intmat::solve_echelon(&big, r).is_some())
    }
}

/// Invariant factors (Smith diagonal, length `|G|`) of `big / small`.
pub fn quotient_invariants(small: &IdealLattice, big: &IdealLattice) -> Result<Vec<BigInt>> {
    if small.group != big.group {
        return Err(Error::GroupMismatch);
    }
    let d = small.denominator.lcm(&big.denominator);
    let b = big.rows_over(&d);
    let mut rel = Vec::with_capacity(small.basis.len());
    for r in small.rows_over(&d) {
        rel.push(intmat::solve_echelon(&b, &r).ok_or(Error::Containment)?);
    }
    Ok(intmat::snf(&rel, b.len()).diag)
}

/// `#(Z[G] / J)` for a full-rank lattice `J ⊆ Z[G]`.
pub fn cardinality(j: &IdealLattice) -> Result<BigInt> {
    let inv = quotient_invariants(j, &IdealLattice::ring(&j.group))?;
    Ok(inv.iter().product())
}

/// A finite (or at least finitely generated) `Z[G]`-module `Z^k / R` with
/// one action matrix per standard generator of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    group: FinAbGroup,
    rank: usize,
    relations: Vec<Row>,
    actions: Vec<Vec<Row>>,
}

fn mat_sub_identity(a: &[Row]) -> Vec<Row> {
    let mut out = a.to_vec();
    for (i, r) in out.iter_mut().enumerate() {
        r[i] -= 1;
    }
    out
}

fn permutation_matrix(perm: &[usize]) -> Vec<Row> {
    let n = perm.len();
    (0..n).map(|j| intmat::unit_row(n, perm[j], BigInt::one())).collect()
}

fn relation_hnf(rows: &[Row], rank: usize) -> Vec<Row> {
    match intmat::full_rank_hnf(rows, rank) {
        Ok(h) => h,
        Err(_) => intmat::hnf(rows, rank, None),
    }
}

impl FiniteModule {
    /// Checks that the actions preserve the relations, commute and have the
    /// orders of the group's invariant factors modulo the relations.
    pub fn new(group: &FinAbGroup, rank: usize, relations: &[Row], actions: Vec<Vec<Row>>) -> Result<Self> {
        if actions.len() != group.rank() {
            return Err(Error::GroupMismatch);
        }
        let m = Self { group: group.clone(), rank, relations: relation_hnf(relations, rank), actions };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Precondition(format!("invalid module action: {what}")));
        for (i, a) in self.actions.iter().enumerate() {
            if !self.relations.iter().all(|r| self.in_relations(&intmat::vec_mat(r, a))) {
                return bad("relations not preserved");
            }
            let mut pow = intmat::identity(self.rank);
            for _ in 0..self.group.factors()[i] {
                pow = intmat::mat_mul(&pow, a);
            }
            if !self.rows_in_relations(&mat_sub_identity(&pow)) {
                return bad("generator order");
            }
            for b in &self.actions[..i] {
                let ab = intmat::mat_mul(a, b);
                let ba = intmat::mat_mul(b, a);
                let diff: Vec<Row> = ab.iter().zip(&ba).map(|(x, y)| x.iter().zip(y).map(|(s, t)| s - t).collect()).collect();
                if !self.rows_in_relations(&diff) {
                    return bad("actions do not commute");
                }
            }
        }
        Ok(())
    }

    /// `Z[G] / (rels)`.
    pub fn ring_quotient(group: &FinAbGroup, rels: &[GroupRingElem]) -> Result<Self> {
        if rels.iter().any(|r| r.group != *group) {
            return Err(Error::GroupMismatch);
        }
        let rows: Vec<Row> = rels.iter().flat_map(GroupRingElem::translates).collect();
        let actions = group.generators().iter().map(|g| permutation_matrix(&translation(group, g))).collect();
        Self::new(group, group.order() as usize, &rows, actions)
    }

    /// `Z[G/K] / (rels)`, viewed as a `G`-module through `q: G -> G/K`.
    pub fn inflated_ring_quotient(q: &QuotientData, rels: &[GroupRingElem]) -> Result<Self> {
        let gq = q.quotient();
        if rels.iter().any(|r| r.group != *gq) {
            return Err(Error::GroupMismatch);
        }
        let rows: Vec<Row> = rels.iter().flat_map(GroupRingElem::translates).collect();
        let actions = q
            .parent()
            .generators()
            .iter()
            .map(|g| permutation_matrix(&translation(gq, &q.project(g))))
            .collect();
        Self::new(q.parent(), gq.order() as usize, &rows, actions)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Row] {
        &self.relations
    }

    pub fn actions(&self) -> &[Vec<Row>] {
        &self.actions
    }

    pub fn in_relations(&self, v: &[BigInt]) -> bool {
        intmat::solve_echelon(&self.relations, v).is_some()
    }

    pub fn rows_in_relations(&self, rows: &[Row]) -> bool {
        rows.iter().all(|r| self.in_relations(r))
    }

    pub fn is_finite(&self) -> bool {
        self.relations.len() == self.rank
    }

    /// Smith diagonal of the presentation, dropping unit entries; zeros mark
    /// free summands.
    pub fn invariants(&self) -> Vec<BigInt> {
        let mut d: Vec<BigInt> = intmat::snf(&self.relations, self.rank).diag;
        d.resize(self.rank, BigInt::zero());
        d.retain(|x| !x.is_one());
        d.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
            (true, true) => std::cmp::Ordering::Equal,
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            _ => a.cmp(b),
        });
        d
    }

    /// Invariant factors as `i64`, for finite modules of moderate size.
    pub fn invariant_factors(&self) -> Result<Vec<i64>> {
        if !self.is_finite() {
            return Err(Error::Infinite);
        }
        Ok(self.invariants().iter().map(|d| d.to_i64().expect("small invariant factor")).collect())
    }

    pub fn order(&self) -> Result<BigInt> {
        if !self.is_finite() {
            return Err(Error::Infinite);
        }
        Ok(intmat::diagonal_product(&self.relations))
    }

    pub fn is_zero(&self) -> bool {
        self.is_finite() && intmat::diagonal_product(&self.relations).is_one()
    }

    /// Smallest positive integer killing the module.
    pub fn exponent(&self) -> Result<BigInt> {
        if !self.is_finite() {
            return Err(Error::Infinite);
        }
        Ok(self.invariants().last().cloned().unwrap_or_else(BigInt::one))
    }

    /// Matrix of the action of `g`.
    pub fn action_of(&self, g: &GroupElement) -> Vec<Row> {
        let mut m = intmat::identity(self.rank);
        for (a, &c) in self.actions.iter().zip(g.coords()) {
            for _ in 0..c {
                m = intmat::mat_mul(&m, a);
            }
        }
        m
    }

    /// Matrix of the action of a group-ring element.
    pub fn element_matrix(&self, x: &GroupRingElem) -> Vec<Row> {
        let mut out = vec![intmat::zero_row(self.rank); self.rank];
        for (j, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = self.action_of(&self.group.element_at(j));
            for (o, r) in out.iter_mut().zip(&a) {
                for (s, t) in o.iter_mut().zip(r) {
                    *s += c * t;
                }
            }
        }
        out
    }

    /// HNF of the span of `rows` together with the relations.
    pub fn span_with_relations(&self, rows: &[Row]) -> Vec<Row> {
        let mut all = rows.to_vec();
        all.extend(self.relations.iter().cloned());
        relation_hnf(&all, self.rank)
    }

    /// The subquotient `top / bottom` of `Z^k`, where `R ⊆ bottom ⊆ top` are
    /// `G`-stable lattices given by echelon bases.
    pub fn subquotient(&self, top: &[Row], bottom: &[Row]) -> Result<Self> {
        let t = top.len();
        let coords = |v: &[BigInt]| intmat::solve_echelon(top, v).ok_or(Error::Containment);
        let rel: Vec<Row> = bottom.iter().map(|r| coords(r)).collect::<Result<_>>()?;
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let m: Vec<Row> = top.iter().map(|r| coords(&intmat::vec_mat(r, a))).collect::<Result<_>>()?;
            actions.push(m);
        }
        Ok(Self { group: self.group.clone(), rank: t, relations: relation_hnf(&rel, t), actions })
    }

    /// The `p`-primary part.
    pub fn p_part(&self, p: u64) -> Result<Self> {
        let e = self.exponent()?;
        let mut m = e.clone();
        let pb = BigInt::from(p);
        while m.is_multiple_of(&pb) {
            m /= &pb;
        }
        let rows: Vec<Row> = (0..self.rank).map(|i| intmat::unit_row(self.rank, i, m.clone())).collect();
        let top = self.span_with_relations(&rows);
        self.subquotient(&top, &self.relations.clone())
    }

    /// Elements of a finite module as coordinate rows in the Smith basis,
    /// together with the map back to `Z^k`.
    pub fn smith_elements(&self, limit: usize) -> Option<Vec<Row>> {
        let snf = intmat::snf(&self.relations, self.rank);
        let mut radices = Vec::new();
        let mut positions = Vec::new();
        for (i, d) in snf.diag.iter().enumerate() {
            if !d.is_one() {
                radices.push(d.to_usize()?);
                positions.push(i);
            }
        }
        let total: usize = radices.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))?;
        if total > limit {
            return None;
        }
        let mut out = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut y = intmat::zero_row(self.rank);
            for (k, &d) in radices.iter().enumerate().rev() {
                y[positions[k]] = BigInt::from(idx % d);
                idx /= d;
            }
            out.push(intmat::vec_mat(&y, &snf.v_inv));
        }
        Some(out)
    }

    /// Whether `x` generates the whole module over `Z[G]`.
    pub fn generates(&self, x: &[BigInt]) -> bool {
        let rows: Vec<Row> = self.group.elements().map(|g| intmat::vec_mat(x, &self.action_of(&g))).collect();
        let span = self.span_with_relations(&rows);
        intmat::diagonal_product(&span).is_one() && span.len() == self.rank
    }
}

/// `A_{I, phi} = Z[G/I] / (1 - phi^{-1} + #I)` with `G` acting through `G/I`.
pub fn a_module(i: &Subgroup, phi: &GroupElement) -> Result<FiniteModule> {
    let g = i.parent();
    if !g.owns(phi) {
        return Err(Error::ParentMismatch);
    }
    let q = i.quotient();
    let gq = q.quotient();
    let phibar = q.project(phi);
    let rel = &(&GroupRingElem::one(gq) - &GroupRingElem::basis(gq, &gq.neg(&phibar)))
        + &GroupRingElem::scalar(gq, i.order());
    let m = FiniteModule::inflated_ring_quotient(&q, &[rel])?;
    assert!(m.is_finite(), "A_(I,phi) has nonzero norm, so its presentation is finite");
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(f: &[i64]) -> FinAbGroup {
        FinAbGroup::new(f).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Oracle: `|prod over characters of chi(x)|` for cyclic `Z/n`, by complex
    /// floating point evaluation and rounding.
    fn character_norm(x: &GroupRingElem) -> i64 {
        let n = x.coeffs().len();
        let mut re_prod = 1.0f64;
        let mut im_prod = 0.0f64;
        for k in 0..n {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, c) in x.coeffs().iter().enumerate() {
                let t = 2.0 * std::f64::consts::PI * (k * j) as f64 / n as f64;
                let c = c.to_f64().unwrap();
                re += c * t.cos();
                im += c * t.sin();
            }
            let (a, b) = (re_prod * re - im_prod * im, re_prod * im + im_prod * re);
            re_prod = a;
            im_prod = b;
        }
        re_prod.hypot(im_prod).round() as i64
    }

    #[test]
    fn ring_operations() {
        let g = grp(&[3]);
        let s = GroupRingElem::basis(&g, &g.element(&[1]));
        let x = &GroupRingElem::one(&g) + &s.scale(&big(2));
        assert_eq!(x.augmentation(), big(3));
        let one = GroupRingElem::one(&g);
        let prod = &(&one + &s) * &(&one - &s);
        let s2 = GroupRingElem::basis(&g, &g.element(&[2]));
        assert_eq!(prod, &one - &s2);
    }

    #[test]
    fn norm_elements() {
        let g = grp(&[9]);
        let i = Subgroup::generated(&g, &[g.element(&[3])]).unwrap();
        let n = GroupRingElem::norm_element(&i);
        let expected = GroupRingElem::from_terms(&g, &[(1, &[0]), (1, &[3]), (1, &[6])]);
        assert_eq!(n, expected);
        assert_eq!(n.augmentation(), big(3));
        assert_eq!(&n * &n, n.scale(&big(3)));
        let tau = GroupRingElem::basis(&g, &g.element(&[3]));
        assert!((&n * &(&GroupRingElem::one(&g) - &tau)).is_zero());
    }

    #[test]
    fn group_mismatch() {
        let a = GroupRingElem::one(&grp(&[3]));
        let b = GroupRingElem::one(&grp(&[9]));
        assert_eq!(a.try_mul(&b), Err(Error::GroupMismatch));
    }

    #[test]
    fn ideal_examples() {
        let g = grp(&[3]);
        let n = GroupRingElem::norm_element(&Subgroup::full(&g));
        let three = GroupRingElem::scalar(&g, 3);
        let j = IdealLattice::from_generators(&[n.clone(), three.clone()], &big(1)).unwrap();
        // determinant oracle: the 6 spanning vectors have full-rank HNF of determinant 9
        let rows: Vec<Row> = n.translates().into_iter().chain(three.translates()).collect();
        let h = intmat::hnf(&rows, 3, None);
        assert_eq!(intmat::det(&h), big(9));
        assert_eq!(cardinality(&j).unwrap(), big(9));
        assert_eq!(IdealLattice::from_generators(&[GroupRingElem::one(&g)], &big(1)).unwrap(), IdealLattice::ring(&g));
        let three_r = IdealLattice::from_generators(&[three], &big(1)).unwrap();
        assert_eq!(quotient_invariants(&three_r, &IdealLattice::ring(&g)).unwrap(), vec![big(3), big(3), big(3)]);
        assert_eq!(quotient_invariants(&j, &j).unwrap(), vec![big(1); 3]);
        assert_eq!(quotient_invariants(&IdealLattice::ring(&g), &j), Err(Error::Containment));
    }

    #[test]
    fn rational_lattice_example() {
        // (nu, 1 - nu/3) over Z/3 with I = G and phi = 1
        let g = grp(&[3]);
        let nu = GroupRingElem::norm_element(&Subgroup::full(&g));
        let gens = [nu.scale(&big(3)), &GroupRingElem::scalar(&g, 3) - &nu];
        let l = IdealLattice::from_generators(&gens, &big(3)).unwrap();
        assert_eq!(l.denominator(), &big(3));
        // oracle: spanning vectors scaled by 3 have HNF determinant 27 * [Z[G]:L]
        let rows: Vec<Row> = gens.iter().flat_map(|x| x.translates()).collect();
        let d = intmat::det(&intmat::hnf(&rows, 3, None));
        let (num, den) = l.index_in_ring();
        assert_eq!(d * &den, num * big(27));
        assert!(l.contains(&nu, &big(1)));
        assert!(!l.contains(&GroupRingElem::one(&g), &big(3)));
    }

    #[test]
    fn not_full_rank() {
        let g = grp(&[3]);
        let n = GroupRingElem::norm_element(&Subgroup::full(&g));
        assert!(matches!(IdealLattice::from_generators(&[n], &big(1)), Err(Error::NotFullRank { rank: 1, expected: 3 })));
    }

    #[test]
    fn a_module_examples() {
        let g = grp(&[3]);
        let m = a_module(&Subgroup::full(&g), &g.identity()).unwrap();
        assert_eq!(m.invariant_factors().unwrap(), vec![3]);
        assert!(m.rows_in_relations(&mat_sub_identity(&m.actions()[0])));

        let g = grp(&[9]);
        let i = Subgroup::generated(&g, &[g.element(&[3])]).unwrap();
        let m = a_module(&i, &g.element(&[1])).unwrap();
        // |prod over chi of Z/3 of (4 - chi(tau)^{-1})| = 3 * |4 - w|^2 = 3 * 21
        assert_eq!(m.order().unwrap(), big(63));
        // lift independence
        let m2 = a_module(&i, &g.element(&[4])).unwrap();
        assert_eq!(m2.order().unwrap(), big(63));
    }

    #[test]
    fn cardinality_matches_character_norm() {
        let g = grp(&[6]);
        let samples: [&[i64]; 4] = [&[2, 1, 0, 0, 0, 0], &[3, -1, 2, 0, 1, 0], &[5, 0, 0, 1, 0, 0], &[1, 1, 1, 1, 1, 2]];
        for c in samples {
            let x = GroupRingElem::from_coeffs(&g, c.iter().map(|&v| big(v)).collect()).unwrap();
            let j = IdealLattice::from_generators(std::slice::from_ref(&x), &big(1)).unwrap();
            assert_eq!(cardinality(&j).unwrap(), big(character_norm(&x)), "{x}");
        }
    }
}
