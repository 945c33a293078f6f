//! Exact integer matrix routines: Hermite and Smith normal forms, integer
//! kernels and triangular solves.
//!
//! Matrices are stored as a list of rows and lattices are always row spans.
//! Every routine works over arbitrary-precision integers; the optional
//! per-column moduli let callers keep entries small when the lattice is known
//! to contain `m_j * e_j` for every column `j`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Row = Vec<BigInt>;

pub fn zero_row(n: usize) -> Row {
    vec![BigInt::zero(); n]
}

pub fn unit_row(n: usize, i: usize, scale: BigInt) -> Row {
    let mut r = zero_row(n);
    r[i] = scale;
    r
}

pub fn identity(n: usize) -> Vec<Row> {
    (0..n).map(|i| unit_row(n, i, BigInt::one())).collect()
}

pub fn is_zero_row(r: &[BigInt]) -> bool {
    r.iter().all(Zero::is_zero)
}

pub fn from_i64(rows: &[Vec<i64>]) -> Vec<Row> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// `a -= q * b`, entrywise.
fn sub_mul(a: &mut [BigInt], b: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn reduce_tail(row: &mut [BigInt], moduli: Option<&[BigInt]>, from: usize) {
    if let Some(m) = moduli {
        for j in from..row.len() {
            if !m[j].is_zero() && !row[j].is_zero() {
                row[j] = row[j].mod_floor(&m[j]);
            }
        }
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result lists the nonzero rows in echelon form: pivots strictly move
/// right, every pivot is positive and every entry above a pivot lies in
/// `[0, pivot)`. This form is unique for a given lattice.
///
/// When `moduli` is given, the caller guarantees that `moduli[j] * e_j`
/// belongs to the lattice for each column with a nonzero modulus; those
/// vectors are added to the generating set and used to reduce entries.
pub fn hnf(rows: &[Row], ncols: usize, moduli: Option<&[BigInt]>) -> Vec<Row> {
    let mut work: Vec<Row> = Vec::with_capacity(rows.len() + ncols);
    for r in rows {
        debug_assert_eq!(r.len(), ncols);
        let mut r = r.clone();
        reduce_tail(&mut r, moduli, 0);
        if !is_zero_row(&r) {
            work.push(r);
        }
    }
    if let Some(m) = moduli {
        for (j, mj) in m.iter().enumerate() {
            if !mj.is_zero() {
                work.push(unit_row(ncols, j, mj.abs()));
            }
        }
    }

    let mut pivots: Vec<(usize, Row)> = Vec::new();
    for c in 0..ncols {
        loop {
            let best = work
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[c].is_zero())
                .min_by(|(_, a), (_, b)| a[c].abs().cmp(&b[c].abs()))
                .map(|(i, _)| i);
            let Some(idx) = best else { break };
            let mut piv = work.swap_remove(idx);
            let mut unfinished = false;
            for r in work.iter_mut() {
                if r[c].is_zero() {
                    continue;
                }
                let q = r[c].div_floor(&piv[c]);
                sub_mul(r, &piv, &q);
                reduce_tail(r, moduli, c + 1);
                if !r[c].is_zero() {
                    unfinished = true;
                }
            }
            if unfinished {
                work.push(piv);
                continue;
            }
            if piv[c].is_negative() {
                for x in piv.iter_mut() {
                    *x = -&*x;
                }
            }
            reduce_tail(&mut piv, moduli, c + 1);
            pivots.push((c, piv));
            break;
        }
        work.retain(|r| !is_zero_row(r));
    }

    for k in 0..pivots.len() {
        let (pc, _) = pivots[k];
        let (head, tail) = pivots.split_at_mut(k);
        let pivot_row = &tail[0].1;
        for (_, row) in head.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let q = row[pc].div_floor(&pivot_row[pc]);
            sub_mul(row, pivot_row, &q);
        }
    }
    pivots.into_iter().map(|(_, r)| r).collect()
}

/// Column index of the first nonzero entry.
pub fn pivot_col(r: &[BigInt]) -> Option<usize> {
    r.iter().position(|x| !x.is_zero())
}

/// Solves `c · basis = v` for an echelon basis (as produced by [`hnf`]).
pub fn solve_echelon(basis: &[Row], v: &[BigInt]) -> Option<Row> {
    let mut rem: Row = v.to_vec();
    let mut coeffs = zero_row(basis.len());
    for (i, row) in basis.iter().enumerate() {
        let pc = pivot_col(row)?;
        if rem[..pc].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = rem[pc].div_rem(&row[pc]);
        if !r.is_zero() {
            return None;
        }
        sub_mul(&mut rem, row, &q);
        coeffs[i] = q;
    }
    is_zero_row(&rem).then_some(coeffs)
}

/// Basis (in Hermite form) of `{x in Z^m : x · a = 0}` where `a` has `m` rows.
pub fn left_kernel(a: &[Row], ncols: usize) -> Vec<Row> {
    let m = a.len();
    let aug: Vec<Row> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend(unit_row(m, i, BigInt::one()));
            row
        })
        .collect();
    hnf(&aug, ncols + m, None)
        .into_iter()
        .filter(|r| is_zero_row(&r[..ncols]))
        .map(|r| r[ncols..].to_vec())
        .collect()
}

/// Smith normal form `U · A · V = diag(s_1, ..., s_k)` with the column
/// transform `V` and its inverse.
#[derive(Debug, Clone)]
pub struct Snf {
    /// Diagonal entries `s_1 | s_2 | ...`, nonnegative, length `min(rows, cols)`.
    pub diag: Vec<BigInt>,
    pub v: Vec<Row>,
    pub v_inv: Vec<Row>,
}

pub fn snf(a: &[Row], ncols: usize) -> Snf {
    let nrows = a.len();
    let mut m: Vec<Row> = a.to_vec();
    let mut v = identity(ncols);
    let mut v_inv = identity(ncols);
    let kmax = nrows.min(ncols);

    // col_j -= q * col_i, tracked in V and V^{-1}.
    let col_op = |m: &mut Vec<Row>, v: &mut Vec<Row>, v_inv: &mut Vec<Row>, i: usize, j: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let t = &row[i] * q;
            row[j] -= t;
        }
        for row in v.iter_mut() {
            let t = &row[i] * q;
            row[j] -= t;
        }
        let rj = v_inv[j].clone();
        for (x, y) in v_inv[i].iter_mut().zip(&rj) {
            *x += q * y;
        }
    };
    let col_swap = |m: &mut Vec<Row>, v: &mut Vec<Row>, v_inv: &mut Vec<Row>, i: usize, j: usize| {
        if i == j {
            return;
        }
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    };

    let mut t = 0;
    while t < kmax {
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if m[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        col_swap(&mut m, &mut v, &mut v_inv, t, bj);

        let mut dirty = false;
        for i in t + 1..nrows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            let pivot_row = m[t].clone();
            sub_mul(&mut m[i], &pivot_row, &q);
            dirty |= !m[i][t].is_zero();
        }
        for j in t + 1..ncols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            col_op(&mut m, &mut v, &mut v_inv, t, j, &q);
            dirty |= !m[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        let piv = m[t][t].clone();
        let offender = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !m[i][j].is_multiple_of(&piv)));
        if let Some(i) = offender {
            let ri = m[i].clone();
            for (x, y) in m[t].iter_mut().zip(&ri) {
                *x += y;
            }
            continue;
        }
        if piv.is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let diag = (0..kmax).map(|i| m[i][i].abs()).collect();
    Snf { diag, v, v_inv }
}

/// Invariant factors of `Z^ncols / rowspan(a)` that differ from one; a zero
/// entry marks a free summand.
pub fn cokernel_invariants(a: &[Row], ncols: usize) -> Vec<BigInt> {
    let s = snf(a, ncols);
    let mut out: Vec<BigInt> = s.diag.into_iter().filter(|d| !d.is_one()).collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), ncols.saturating_sub(a.len().min(ncols))));
    out
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn det(a: &[Row]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = val / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

const RANK_PRIME: u128 = (1u128 << 61) - 1;

fn mod_prime(x: &BigInt) -> u128 {
    let p = BigInt::from(RANK_PRIME);
    let r = x.mod_floor(&p);
    u128::try_from(r).expect("reduced value fits")
}

fn pow_mod(mut b: u128, mut e: u128, p: u128) -> u128 {
    let mut acc = 1u128;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Indices of a maximal subset of rows that are linearly independent modulo a
/// large prime (hence over Q).
fn independent_rows_mod_p(rows: &[Row], ncols: usize) -> Vec<usize> {
    let p = RANK_PRIME;
    let mut basis: Vec<(usize, Vec<u128>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, r) in rows.iter().enumerate() {
        if chosen.len() == ncols {
            break;
        }
        let mut v: Vec<u128> = r.iter().map(mod_prime).collect();
        for (pc, b) in &basis {
            if v[*pc] != 0 {
                let f = v[*pc];
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = pow_mod(v[pc], p - 2, p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            basis.push((pc, v));
            chosen.push(idx);
        }
    }
    chosen
}

/// Hermite form of a lattice that is expected to have full rank `ncols`.
///
/// Uses the determinant of an independent subset of generators as a modulus;
/// returns `Err(rank)` when the span is rank deficient.
pub fn full_rank_hnf(rows: &[Row], ncols: usize) -> Result<Vec<Row>, usize> {
    let chosen = independent_rows_mod_p(rows, ncols);
    if chosen.len() == ncols {
        let sub: Vec<Row> = chosen.iter().map(|&i| rows[i].clone()).collect();
        let d = det(&sub).abs();
        debug_assert!(!d.is_zero());
        let moduli = vec![d; ncols];
        return Ok(hnf(rows, ncols, Some(&moduli)));
    }
    let h = hnf(rows, ncols, None);
    if h.len() == ncols {
        Ok(h)
    } else {
        Err(h.len())
    }
}

pub fn mat_mul(a: &[Row], b: &[Row]) -> Vec<Row> {
    let ncols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|ra| {
            let mut out = zero_row(ncols);
            for (x, rb) in ra.iter().zip(b) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(rb) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn vec_mat(v: &[BigInt], b: &[Row]) -> Row {
    mat_mul(&[v.to_vec()], b).pop().unwrap_or_default()
}

pub fn diagonal_product(h: &[Row]) -> BigInt {
    h.iter()
        .map(|r| r[pivot_col(r).expect("nonzero echelon row")].clone())
        .product()
}
