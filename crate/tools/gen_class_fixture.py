"""Regenerate data/class_values_p3_r2.csv.

For each imaginary quadratic F of discriminant d in {-4, -8, -20, -24} and each
prime q < 3600 with q = 1 mod 9 that splits in F, let L+ be the degree-9
subfield of Q(mu_q) and L = L+ F. The minus class number is

    h^-(L) = Q w prod_{chi odd} (-1/2 B_{1,chi}),

with chi = psi * chi_F, psi running over the characters of L+. Q w is prime to
3 here, so ord_3 h^- is the sum over Galois orbits of psi of
ord_3 N(B_{1, psi chi_F}), each norm computed as an integer determinant.

Usage: python3 tools/gen_class_fixture.py [out.csv]
"""

import csv
import sys

from sympy import isprime, primitive_root

DISCRIMINANTS = [-4, -8, -20, -24]
BOUND = 3600
CYCLOTOMIC = {3: [1, 1, 1], 9: [1, 0, 0, 1, 0, 0, 1]}


def kronecker(d, n):
    """Kronecker symbol (d/n) for n > 0."""
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    a, m = d % n, n
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def ord3(n):
    assert n != 0
    n = abs(n)
    k = 0
    while n % 3 == 0:
        n //= 3
        k += 1
    return k


def reduce(v, phi):
    v = list(v)
    n = len(phi) - 1
    for k in range(len(v) - 1, n - 1, -1):
        c = v[k]
        if c:
            for j in range(n + 1):
                v[k - n + j] -= c * phi[j]
    return (v + [0] * n)[:n]


def det(m):
    """Bareiss fraction-free determinant."""
    m = [row[:] for row in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def norm(phi, coeffs):
    """Res(phi, sum coeffs[j] X^j) for monic phi: det of multiplication on Z[X]/(phi)."""
    n = len(phi) - 1
    row = reduce(coeffs, phi)
    rows = []
    for _ in range(n):
        rows.append(row)
        row = reduce([0] + row, phi)
    return det(rows)


def ord3_minus_class_number(q, d):
    f = q * abs(d)
    g = primitive_root(q)
    index = {}
    x = 1
    for k in range(q - 1):
        index[x] = k
        x = x * g % q
    chi_f = [kronecker(d, a) if a else 0 for a in range(abs(d))]

    # psi trivial: chi_F is primitive of conductor |d|
    b0 = sum(chi_f[a] * a for a in range(abs(d)))
    total = ord3(b0) - ord3(abs(d))

    # sums[j] = sum of chi_F(a) a over 0 < a < f prime to f with ind_g(a) = j mod 9
    sums = [0] * 9
    for a in range(1, f):
        c = chi_f[a % abs(d)]
        r = a % q
        if c and r:
            sums[index[r] % 9] += c * a
    for m in (3, 9):
        # psi of exact order m with psi(g) = zeta_m; its orbit gives a norm from Q(zeta_m)
        coeffs = [0] * m
        for j, s in enumerate(sums):
            coeffs[j % m] += s
        phi = CYCLOTOMIC[m]
        total += ord3(norm(phi, coeffs)) - (len(phi) - 1) * ord3(f)
    return total


def main(out):
    rows = []
    for d in DISCRIMINANTS:
        for q in range(19, BOUND, 18):
            if isprime(q) and kronecker(d, q) == 1:
                rows.append((q, d, ord3_minus_class_number(q, d)))
    rows.sort()
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["q", "field_tag", "ord_value"])
        w.writerows(rows)
    print("rows:", len(rows), "attained:", sorted({r[2] for r in rows}))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/class_values_p3_r2.csv")
