//! Explicit lattice representatives of the shifts of `A_{I, phi}` and the
//! identities they satisfy.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{GroupElement, Subgroup};
use crate::arith;
use crate::error::{Error, Result};
use crate::grouprings::{GroupRingElem, IdealLattice};
use crate::intmat::{self, Row};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftRep {
    /// `+1` for the ideal `(N_I, 1 - phi~^{-1} + #I)`, `-1` for
    /// `(nu_I, 1 - (nu_I/#I) phi^{-1})`.
    pub direction: i8,
    pub i: Subgroup,
    /// Lexicographically smallest element of the coset `phi + I`.
    pub phi: GroupElement,
    pub lattice: IdealLattice,
}

/// `1 - phi^{-1} + #I` in `Z[G]`.
fn g_tilde(i: &Subgroup, phi: &GroupElement) -> GroupRingElem {
    let g = i.parent();
    &(&GroupRingElem::one(g) - &GroupRingElem::basis(g, &g.neg(phi))) + &GroupRingElem::scalar(g, i.order())
}

fn check_nontrivial(i: &Subgroup) -> Result<()> {
    if i.is_trivial() {
        Err(Error::Precondition("I must be nontrivial".into()))
    } else {
        Ok(())
    }
}

pub fn omega1_lattice(i: &Subgroup, phi: &GroupElement) -> Result<ShiftRep> {
    let g = i.parent();
    if !g.is_cyclic() {
        return Err(Error::Scope(format!("the omega^1 representative needs a cyclic group, got {g}")));
    }
    if !g.owns(phi) {
        return Err(Error::ParentMismatch);
    }
    let phi = i.canonical_lift(phi);
    let n_i = GroupRingElem::norm_element(i);
    let lattice = IdealLattice::from_generators(&[n_i, g_tilde(i, &phi)], &BigInt::one())?;
    Ok(ShiftRep { direction: 1, i: i.clone(), phi, lattice })
}

/// Checks that `ker(R^2 -> R, (a, b) -> a(tau - 1) + b g~)` is spanned by the
/// orbits of `(N_I, 0)` and `(g~, 1 - tau)`, and that its first projection is
/// the ideal `(N_I, g~)`.
pub fn verify_kernel_generators(i: &Subgroup, phi: &GroupElement) -> Result<bool> {
    check_nontrivial(i)?;
    let rep = omega1_lattice(i, phi)?;
    let g = i.parent();
    let n = g.order() as usize;
    let tau = i.generators().into_iter().next().expect("nontrivial subgroup");
    let one = GroupRingElem::one(g);
    let tau_e = GroupRingElem::basis(g, &tau);
    let gt = g_tilde(i, &rep.phi);

    let mut rho: Vec<Row> = (&tau_e - &one).translates();
    rho.extend(gt.translates());
    let kernel = intmat::hnf(&intmat::left_kernel(&rho, n), 2 * n, None);

    let n_i = GroupRingElem::norm_element(i);
    let zero = GroupRingElem::zero(g);
    let pair_rows = |a: &GroupRingElem, b: &GroupRingElem| -> Vec<Row> {
        g.elements()
            .map(|x| {
                let mut r = a.translate(&x).coeffs().to_vec();
                r.extend_from_slice(b.translate(&x).coeffs());
                r
            })
            .collect()
    };
    let mut expected = pair_rows(&n_i, &zero);
    expected.extend(pair_rows(&gt, &(&one - &tau_e)));
    let spans_match = intmat::hnf(&expected, 2 * n, None) == kernel;

    let first: Vec<Row> = kernel.iter().map(|r| r[..n].to_vec()).collect();
    let projection = IdealLattice::from_rows(g, &first, &BigInt::one())?;
    Ok(spans_match && projection == rep.lattice)
}

pub fn omega_minus1_lattice(i: &Subgroup, phi: &GroupElement) -> Result<ShiftRep> {
    check_nontrivial(i)?;
    let g = i.parent();
    if !g.owns(phi) {
        return Err(Error::ParentMismatch);
    }
    let phi = i.canonical_lift(phi);
    let nu = GroupRingElem::norm_element(i);
    let k = BigInt::from(i.order());
    let second = &GroupRingElem::scalar(g, k.clone()) - &nu.translate(&g.neg(&phi));
    let lattice = IdealLattice::from_generators(&[nu.scale(&k), second], &k)?;
    Ok(ShiftRep { direction: -1, i: i.clone(), phi, lattice })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtSequenceCheck {
    /// `pi(L) = pi(Z[G])` in `Q[G] / nu_I Q[G]`.
    pub image: bool,
    /// `{a in Q[G/I] : nu_I a in L} = Z[G/I]`.
    pub preimage: bool,
    /// The image has free rank `|G| - |G/I|`.
    pub rank: bool,
}

impl ExtSequenceCheck {
    pub fn holds(&self) -> bool {
        self.image && self.preimage && self.rank
    }
}

/// Checks the exact sequence `0 -> Z[G/I] -> L_{I, phi} -> Z[G]/(nu_I) -> 0`
/// as two lattice identities inside `Q[G]`.
pub fn verify_ext_sequence(i: &Subgroup, phi: &GroupElement) -> Result<ExtSequenceCheck> {
    let rep = omega_minus1_lattice(i, phi)?;
    let g = i.parent();
    let n = g.order() as usize;
    let nu = GroupRingElem::norm_element(i);
    let d = rep.lattice.denominator().clone();
    let basis = rep.lattice.basis();

    // Coordinates x -> x·V in which nu_I Q[G] is spanned by the first m axes.
    let snf = intmat::snf(&nu.translates(), n);
    let m = snf.diag.iter().filter(|x| !x.is_zero()).count();
    let projected: Vec<Row> = basis.iter().map(|r| intmat::vec_mat(r, &snf.v)[m..].to_vec()).collect();

    let integral = projected.iter().flatten().all(|x| (x % &d).is_zero());
    let image = integral && {
        let scaled: Vec<Row> = projected.iter().map(|r| r.iter().map(|x| x / &d).collect()).collect();
        intmat::hnf(&scaled, n - m, None) == intmat::identity(n - m)
    };
    let rank = m == (g.order() / i.order()) as usize && n - m == intmat::hnf(&projected, n - m, None).len();

    // L ∩ nu_I Q[G]: integer combinations of the basis whose projection vanishes.
    let combos = intmat::left_kernel(&projected, n - m);
    let q = i.quotient();
    let gq = q.quotient();
    let preimage = combos.iter().all(|c| {
        let v = intmat::vec_mat(c, basis);
        // v / d = nu_I · a with a constant on cosets; a_j is read off a lift.
        gq.elements().all(|y| {
            let lift = q.section(&y);
            (&v[g.index_of(&lift)] % &d).is_zero()
        })
    }) && {
        // Z[G/I] maps into L: nu_I · [g] lies in L.
        rep.lattice.contains(&nu, &BigInt::one())
    };
    Ok(ExtSequenceCheck { image, preimage, rank })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitTransport {
    /// `k` with `phi' = k · phi` in `G/I`; the unit is `sum_{j<k} phi^{-j}`.
    pub k: u64,
    pub precision: u32,
    pub required_precision: u32,
    pub holds: bool,
}

/// Smallest precision at which the transport comparison is conclusive.
fn required_precision(p: u64, i: &Subgroup, target: &IdealLattice) -> u32 {
    let v = arith::val(p, i.order());
    let g = target.group();
    let mut k0 = 0;
    let mut pk = BigInt::one();
    while !target.contains(&GroupRingElem::scalar(g, pk.clone()), &BigInt::one()) {
        pk *= p;
        k0 += 1;
    }
    2 * v + k0
}

/// For a `p`-group `G` and pairs with `I = I'` and `D = D'`, builds the unit
/// `u` with `u (1 - phi^{-1}) = 1 - phi'^{-1}` in `Z[G/I]`, reduces it modulo
/// `p^M`, and checks `(e u + 1 - e) L + p^{M - 2v} Z[G] = L'` where
/// `e = nu_I / #I` and `v = ord_p #I`.
pub fn verify_unit_transport(
    i: &Subgroup,
    phi: &GroupElement,
    i2: &Subgroup,
    phi2: &GroupElement,
    precision: u32,
) -> Result<UnitTransport> {
    let g = i.parent();
    let primes = arith::prime_divisors(g.order());
    let [p] = primes.as_slice() else {
        return Err(Error::Scope(format!("unit transport is implemented for p-groups, got {g}")));
    };
    let p = *p;
    if i != i2 {
        return Err(Error::Precondition("unit transport needs I = I'".into()));
    }
    let d = i.join(&Subgroup::generated(g, std::slice::from_ref(phi))?)?;
    let d2 = i.join(&Subgroup::generated(g, std::slice::from_ref(phi2))?)?;
    if d != d2 {
        return Err(Error::Precondition("unit transport needs D = D'".into()));
    }
    let src = omega_minus1_lattice(i, phi)?;
    let dst = omega_minus1_lattice(i, phi2)?;
    let required = required_precision(p, i, &dst.lattice);
    if precision < required {
        return Err(Error::Precision { given: precision, required });
    }

    let q = i.quotient();
    let gq = q.quotient();
    let a = q.project(phi);
    let b = q.project(phi2);
    let ord = gq.element_order(&a);
    let k = (1..=ord.max(1))
        .find(|&k| k % p != 0 && gq.mul(k as i64, &a) == b)
        .ok_or_else(|| Error::NoUnit(format!("{:?} is not a unit multiple of {:?}", b.coords(), a.coords())))?;
    let modulus = num_traits::pow(BigInt::from(p), precision as usize);
    let mut u = GroupRingElem::zero(gq);
    for j in 0..k {
        u = &u + &GroupRingElem::basis(gq, &gq.mul(-(j as i64), &a));
    }
    let u = u.reduce_mod(&modulus);
    let one = GroupRingElem::one(gq);
    let lhs = (&u * &(&one - &GroupRingElem::basis(gq, &gq.neg(&a)))).reduce_mod(&modulus);
    let rhs = (&one - &GroupRingElem::basis(gq, &gq.neg(&b))).reduce_mod(&modulus);
    if lhs != rhs {
        return Err(Error::NoUnit("geometric sum does not solve the unit equation".into()));
    }

    let nu = GroupRingElem::norm_element(i);
    let size = BigInt::from(i.order());
    let multiplier = &(&(&nu * &u.lift(&q)?) + &GroupRingElem::scalar(g, size.clone())) - &nu;
    let moved = src.lattice.multiply(&multiplier, &size)?;
    let slack = num_traits::pow(BigInt::from(p), (precision - 2 * arith::val(p, i.order())) as usize);
    let moved = moved.sum(&IdealLattice::from_generators(&[GroupRingElem::scalar(g, slack)], &BigInt::one())?)?;
    Ok(UnitTransport { k, precision, required_precision: required, holds: moved == dst.lattice })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;
    use crate::grouprings::cardinality;

    fn grp(f: &[i64]) -> FinAbGroup {
        FinAbGroup::new(f).unwrap()
    }

    fn sub(g: &FinAbGroup, gens: &[&[i64]]) -> Subgroup {
        Subgroup::generated(g, &gens.iter().map(|c| g.element(c)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn omega1_examples() {
        let g = grp(&[3]);
        let rep = omega1_lattice(&Subgroup::full(&g), &g.identity()).unwrap();
        assert_eq!(cardinality(&rep.lattice).unwrap(), BigInt::from(9));

        let g = grp(&[9]);
        let rep = omega1_lattice(&Subgroup::full(&g), &g.identity()).unwrap();
        let n = GroupRingElem::norm_element(&Subgroup::full(&g));
        let expected = IdealLattice::from_generators(&[n, GroupRingElem::scalar(&g, 9)], &BigInt::one()).unwrap();
        assert_eq!(rep.lattice, expected);

        let i = sub(&g, &[&[3]]);
        let rep = omega1_lattice(&i, &g.element(&[1])).unwrap();
        let tau = GroupRingElem::from_terms(&g, &[(1, &[0]), (1, &[3]), (1, &[6])]);
        let second = GroupRingElem::from_terms(&g, &[(4, &[0]), (-1, &[8])]);
        let expected = IdealLattice::from_generators(&[tau, second], &BigInt::one()).unwrap();
        assert_eq!(rep.lattice, expected);

        assert!(matches!(omega1_lattice(&Subgroup::full(&grp(&[3, 3])), &grp(&[3, 3]).identity()), Err(Error::Scope(_))));
    }

    #[test]
    fn kernel_generators() {
        let g = grp(&[3]);
        assert!(verify_kernel_generators(&Subgroup::full(&g), &g.identity()).unwrap());
        let g = grp(&[9]);
        assert!(verify_kernel_generators(&sub(&g, &[&[3]]), &g.element(&[1])).unwrap());
        let g = grp(&[27]);
        assert!(verify_kernel_generators(&sub(&g, &[&[9]]), &g.element(&[1])).unwrap());
    }

    #[test]
    fn ext_sequence() {
        let g = grp(&[3]);
        let rep = omega_minus1_lattice(&Subgroup::full(&g), &g.identity()).unwrap();
        assert_eq!(rep.lattice.denominator(), &BigInt::from(3));
        assert!(verify_ext_sequence(&Subgroup::full(&g), &g.identity()).unwrap().holds());
        let g = grp(&[3, 3]);
        assert!(verify_ext_sequence(&sub(&g, &[&[1, 0]]), &g.element(&[0, 1])).unwrap().holds());
        assert!(matches!(verify_ext_sequence(&Subgroup::trivial(&g), &g.identity()), Err(Error::Precondition(_))));
    }

    #[test]
    fn unit_transport() {
        let g = grp(&[9]);
        let i = sub(&g, &[&[3]]);
        let t = verify_unit_transport(&i, &g.element(&[1]), &i, &g.element(&[4]), 10).unwrap();
        assert!(t.holds);
        let t = verify_unit_transport(&i, &g.element(&[1]), &i, &g.element(&[1]), 10).unwrap();
        assert!(t.holds && t.k == 1);
        assert!(matches!(
            verify_unit_transport(&i, &g.element(&[1]), &i, &g.element(&[0]), 10),
            Err(Error::Precondition(_))
        ));
        let t = verify_unit_transport(&i, &g.element(&[1]), &i, &g.element(&[2]), 10).unwrap();
        assert!(t.holds);
        assert!(matches!(
            verify_unit_transport(&i, &g.element(&[1]), &i, &g.element(&[2]), 1),
            Err(Error::Precision { given: 1, .. })
        ));
    }

    #[test]
    fn index_is_lift_independent() {
        let g = grp(&[9]);
        let i = sub(&g, &[&[3]]);
        for a in 0..3 {
            let base = omega_minus1_lattice(&i, &g.element(&[a])).unwrap().lattice.index_in_ring();
            for lift in [a + 3, a + 6] {
                let other = omega_minus1_lattice(&i, &g.element(&[lift])).unwrap();
                assert_eq!(other.lattice.index_in_ring(), base);
            }
        }
    }
}
