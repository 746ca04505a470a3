"""Small exact-integer matrix helpers.

Matrices are tuples of row tuples holding Python ints (or Fractions where
noted). Nothing here is specific to 2x2 except where the name says so.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int = 2) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def mul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in Bt) for row in A)


def apply(A: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in A)


def add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def scale(k, A: Matrix) -> Matrix:
    return tuple(tuple(k * x for x in row) for row in A)


def neg(A: Matrix) -> Matrix:
    return scale(-1, A)


def mod(A: Matrix, m: int) -> Matrix:
    return tuple(tuple(x % m for x in row) for row in A)


def power(A: Matrix, k: int, modulus: int | None = None) -> Matrix:
    """A**k by repeated squaring; k < 0 needs det(A) = +-1."""
    if k < 0:
        return power(inverse_unimodular(A), -k, modulus)
    result = identity(len(A))
    base = A if modulus is None else mod(A, modulus)
    while k:
        if k & 1:
            result = mul(result, base)
            if modulus is not None:
                result = mod(result, modulus)
        k >>= 1
        if k:
            base = mul(base, base)
            if modulus is not None:
                base = mod(base, modulus)
    return result


def det2(A: Matrix) -> int:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def adj2(A: Matrix) -> Matrix:
    (p, q), (r, s) = A
    return ((s, -q), (-r, p))


def inverse_unimodular(A: Matrix) -> Matrix:
    d = det2(A)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={d})")
    return scale(d, adj2(A))


def fraction_matrix(A: Matrix, denominator: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x, denominator) for x in row) for row in A)


def is_integral(F) -> bool:
    return all(x.denominator == 1 for row in F for x in row)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(A: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U*A*V = D diagonal, d_i | d_{i+1}, d_i >= 0.

    U and V are unimodular. Works for any square integer matrix.
    """
    n = len(A)
    D = [list(row) for row in A]
    U = [list(row) for row in identity(n)]
    V = [list(row) for row in identity(n)]

    def row_op(M, i, j, a, b, c, d):
        # rows (i, j) <- (a*Ri + b*Rj, c*Ri + d*Rj)
        ri, rj = M[i], M[j]
        M[i] = [a * x + b * y for x, y in zip(ri, rj)]
        M[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_op(M, i, j, a, b, c, d):
        for row in M:
            x, y = row[i], row[j]
            row[i] = a * x + b * y
            row[j] = c * x + d * y

    for t in range(n):
        while True:
            nonzero = [(abs(D[i][j]), i, j) for i in range(t, n) for j in range(t, n) if D[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            if pi != t:
                row_op(D, t, pi, 0, 1, 1, 0)
                row_op(U, t, pi, 0, 1, 1, 0)
            if pj != t:
                col_op(D, t, pj, 0, 1, 1, 0)
                col_op(V, t, pj, 0, 1, 1, 0)
            done = True
            for i in range(t + 1, n):
                if D[i][t]:
                    g, x, y = ext_gcd(D[t][t], D[i][t])
                    p, q = D[t][t] // g, D[i][t] // g
                    row_op(D, t, i, x, y, -q, p)
                    row_op(U, t, i, x, y, -q, p)
            for j in range(t + 1, n):
                if D[t][j]:
                    g, x, y = ext_gcd(D[t][t], D[t][j])
                    p, q = D[t][t] // g, D[t][j] // g
                    col_op(D, t, j, x, y, -q, p)
                    col_op(V, t, j, x, y, -q, p)
            if any(D[i][t] for i in range(t + 1, n)) or any(D[t][j] for j in range(t + 1, n)):
                done = False
            if done:
                # divisibility d_t | rest
                bad = [(i, j) for i in range(t + 1, n) for j in range(t + 1, n) if D[i][j] % D[t][t]]
                if not bad:
                    break
                i, _ = bad[0]
                row_op(D, t, i, 1, 1, 0, 1)
                row_op(U, t, i, 1, 1, 0, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return as_matrix(U), as_matrix(D), as_matrix(V)


def content(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
