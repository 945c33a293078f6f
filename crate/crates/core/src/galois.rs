//! Galois rings `GR(p^M, f) = (Z/p^M)[X]/(F)` with `F` monic and irreducible
//! mod `p`, used to evaluate characters of order prime to `p` exactly modulo
//! `p^M`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;

type Fp = Vec<u64>;

fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let c = r[r.len() - 1] * inv % p;
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_rem(&out, m, p)
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let e = num_integer::Integer::extended_gcd(&(a as i64), &(p as i64));
    e.x.rem_euclid(p as i64) as u64
}

/// `X^(p^k) mod F`.
fn frobenius_power(f: &Fp, p: u64, k: usize) -> Fp {
    let mut x = fp_rem(&vec![0, 1], f, p);
    for _ in 0..k {
        let mut acc = vec![1];
        for _ in 0..p {
            acc = fp_mulmod(&acc, &x, f, p);
        }
        x = acc;
    }
    x
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
fn is_irreducible(f: &Fp, p: u64) -> bool {
    let n = f.len() - 1;
    let x = fp_rem(&vec![0, 1], f, p);
    let sub_x = |mut a: Fp| {
        a.resize(a.len().max(2), 0);
        a[1] = (a[1] + p - 1) % p;
        trim(&mut a);
        a
    };
    if frobenius_power(f, p, n) != x {
        return false;
    }
    arith::prime_divisors(n as u64).into_iter().all(|q| {
        let g = fp_gcd(f, &sub_x(frobenius_power(f, p, n / q as usize)), p);
        g.len() == 1
    })
}

/// First monic irreducible polynomial of degree `f` over `F_p` in
/// lexicographic order of the low coefficients.
fn irreducible_poly(p: u64, f: usize) -> Fp {
    let mut low = vec![0u64; f];
    loop {
        let mut cand = low.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
        }
    }
}

/// Elements are coefficient vectors of length `f`, entries in `[0, p^M)`.
pub type GrElem = Vec<BigInt>;

#[derive(Clone, Debug)]
pub struct GaloisRing {
    p: u64,
    degree: usize,
    modulus: BigInt,
    poly: Vec<BigInt>,
}

impl GaloisRing {
    pub fn new(p: u64, degree: usize, precision: u32) -> Self {
        let poly = irreducible_poly(p, degree).into_iter().map(BigInt::from).collect();
        Self { p, degree, modulus: num_traits::pow(BigInt::from(p), precision as usize), poly }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn from_int(&self, c: &BigInt) -> GrElem {
        let mut v = vec![BigInt::zero(); self.degree];
        v[0] = c.mod_floor(&self.modulus);
        v
    }

    pub fn one(&self) -> GrElem {
        self.from_int(&BigInt::one())
    }

    pub fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.modulus)).collect()
    }

    pub fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let f = self.degree;
        let mut prod = vec![BigInt::zero(); 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (f..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..f {
                prod[k - f + i] -= &c * &self.poly[i];
            }
        }
        prod.truncate(f);
        prod.iter().map(|x| x.mod_floor(&self.modulus)).collect()
    }

    pub fn pow(&self, a: &GrElem, mut e: u64) -> GrElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn is_one_mod_p(&self, a: &GrElem) -> bool {
        let p = BigInt::from(self.p);
        a.iter().enumerate().all(|(i, x)| x.mod_floor(&p) == if i == 0 { BigInt::one() } else { BigInt::zero() })
    }

    /// A root of unity of exact order `m`, where `m | p^f - 1`. It is the
    /// Teichmuller lift of an element of the residue field.
    pub fn root_of_unity(&self, m: u64) -> GrElem {
        if m == 1 {
            return self.one();
        }
        let q = self.p.pow(self.degree as u32);
        assert_eq!((q - 1) % m, 0, "order must divide p^f - 1");
        let digits = self.modulus.bits() as usize;
        let width = self.degree.min(3) as u32;
        let candidates = (0..self.p.pow(width)).map(|c| {
            let mut v = vec![BigInt::zero(); self.degree];
            let mut c = c;
            for x in v.iter_mut().take(width as usize) {
                *x = BigInt::from(c % self.p);
                c /= self.p;
            }
            v
        });
        for a in candidates {
            if a.iter().all(Zero::is_zero) {
                continue;
            }
            // a^(q^k) stabilizes to the Teichmuller lift after M steps
            let mut t = a.clone();
            for _ in 0..digits {
                t = self.pow(&t, q);
            }
            let z = self.pow(&t, (q - 1) / m);
            let primitive = arith::prime_divisors(m).into_iter().all(|l| !self.is_one_mod_p(&self.pow(&z, m / l)));
            if primitive {
                return z;
            }
        }
        panic!("no root of unity of order {m} found")
    }

    /// Trace to `Z/p^M` of `zeta^t`, as the sum over the Frobenius orbit
    /// `zeta^(t p^j)`, `j < f`.
    pub fn trace_of_power(&self, zeta: &GrElem, m: u64, t: u64) -> BigInt {
        let mut acc = vec![BigInt::zero(); self.degree];
        let mut e = t % m;
        for _ in 0..self.degree {
            acc = self.add(&acc, &self.pow(zeta, e));
            e = e * self.p % m;
        }
        assert!(acc[1..].iter().all(Zero::is_zero), "trace must be rational");
        acc[0].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_polynomials() {
        assert_eq!(irreducible_poly(2, 2), vec![1, 1, 1]);
        assert_eq!(irreducible_poly(3, 2), vec![1, 0, 1]);
        assert!(!is_irreducible(&vec![2, 0, 1], 3)); // x^2 - 1
        assert!(is_irreducible(&vec![1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&vec![1, 0, 1, 0, 1], 2)); // (x^2+x+1)^2
    }

    #[test]
    fn roots_of_unity_and_traces() {
        // 3 has order 4 mod 5, so GR(3^4, 4) holds 5th roots of unity
        let gr = GaloisRing::new(3, 4, 4);
        let z = gr.root_of_unity(5);
        assert_eq!(gr.pow(&z, 5), gr.one());
        assert_ne!(gr.pow(&z, 1), gr.one());
        // sum of the nontrivial 5th roots of unity is -1
        assert_eq!(gr.trace_of_power(&z, 5, 1), BigInt::from(81 - 1));
        assert_eq!(gr.trace_of_power(&z, 5, 0), BigInt::from(4));

        let gr = GaloisRing::new(7, 1, 3);
        let z = gr.root_of_unity(3);
        assert_eq!(gr.pow(&z, 3), gr.one());
        // z^2 + z + 1 = 0
        let s = gr.add(&gr.add(&gr.pow(&z, 2), &z), &gr.one());
        assert!(s.iter().all(Zero::is_zero));
    }
}
