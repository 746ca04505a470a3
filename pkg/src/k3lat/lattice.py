"""Rank-2 even lattices of signature (1,1).

A lattice is stored through its Gram matrix [[2a, b], [b, 2c]] in a fixed basis
(h1, h2). Vectors are plain integer pairs (m, n) meaning m*h1 + n*h2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from . import intmat
from .pell import (
    PellSolution,
    divisors,
    fundamental_solutions,
    fundamental_unit,
    is_perfect_square,
    solvable,
)

Vector = tuple[int, int]


class AdmissionError(ValueError):
    """Input matrix violates one of the standing hypotheses."""

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


@dataclass(frozen=True)
class GramMatrix:
    a: int
    b: int
    c: int

    @property
    def matrix(self) -> intmat.Matrix:
        return ((2 * self.a, self.b), (self.b, 2 * self.c))

    @property
    def discr(self) -> int:
        return 4 * self.a * self.c - self.b * self.b

    @property
    def r(self) -> int:
        return -self.discr

    @property
    def quartic_normalized(self) -> bool:
        return 2 * self.a == 4

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (2 * self.a, self.b, self.b, 2 * self.c)

    def __str__(self) -> str:
        return f"[[{2 * self.a}, {self.b}], [{self.b}, {2 * self.c}]]"


def admit(raw) -> GramMatrix:
    """Validate a 2x2 integer matrix as an even lattice of signature (1,1)."""
    M = intmat.as_matrix(raw)
    if len(M) != 2 or any(len(row) != 2 for row in M):
        raise AdmissionError("rank-2", f"expected a 2x2 matrix, got {raw!r}")
    (p, q), (s, t) = M
    if q != s:
        raise AdmissionError("symmetric", f"off-diagonal entries differ ({q} != {s})")
    if p % 2 or t % 2:
        raise AdmissionError("even", f"diagonal entries {p}, {t} must be even")
    G = GramMatrix(p // 2, q, t // 2)
    if G.discr >= 0:
        kind = "degenerate" if G.discr == 0 else "definite"
        raise AdmissionError(
            "signature (1,1)", f"discr={G.discr} >= 0, the form is {kind}"
        )
    return G


def evaluate(G: GramMatrix, v: Vector) -> int:
    m, n = v
    return 2 * G.a * m * m + 2 * G.b * m * n + 2 * G.c * n * n


def pairing(G: GramMatrix, v: Vector, w: Vector) -> int:
    (m1, n1), (m2, n2) = v, w
    return 2 * G.a * m1 * m2 + G.b * (m1 * n2 + n1 * m2) + 2 * G.c * n1 * n2


def degree(G: GramMatrix, v: Vector) -> int:
    """Pairing of v with the first basis vector h1."""
    return pairing(G, v, (1, 0))


def is_primitive(v: Vector) -> bool:
    return gcd(*v) == 1


@dataclass(frozen=True)
class Representation:
    value: int
    mode: str
    represented: bool
    witness: Vector | None = None
    pell: PellSolution | None = None
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.represented


def represents(G: GramMatrix, value: int, mode: str = "exact") -> Representation:
    """Does the lattice contain a nonzero vector v with v.v = value?

    ``paper-criterion`` answers for value 0 and -2 through r alone (square test,
    and solvability of d^2 - r*n^2 = -4a, which is -8 for quartic forms).
    ``exact`` also enforces that a Pell solution (d, n) lifts to a lattice
    vector, i.e. 2a | d - b*n.
    """
    if mode == "paper-criterion":
        return _represents_paper(G, value)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if value % 2:
        return Representation(value, mode, False, certificate={"reason": "even lattice, odd value"})
    root = is_perfect_square(G.r)
    if root is not None:
        return _represents_split(G, value, root)
    if value == 0:
        return Representation(
            value, mode, False, certificate={"reason": "r is not a square", "r": G.r}
        )
    return _represents_orbit(G, value)


def _represents_paper(G: GramMatrix, value: int) -> Representation:
    mode = "paper-criterion"
    if value == 0:
        root = is_perfect_square(G.r)
        if root is None:
            return Representation(0, mode, False, certificate={"reason": "r is not a square", "r": G.r})
        exact = _represents_split(G, 0, root)
        return Representation(0, mode, True, witness=exact.witness, certificate={"sqrt_r": root})
    if value == -2:
        if is_perfect_square(G.r) is not None:
            exact = _represents_split(G, -2, is_perfect_square(G.r))
            return Representation(-2, mode, exact.represented, exact.witness, certificate=exact.certificate)
        # d^2 - r n^2 = 2a * (-2); the quartic case a = 2 gives -8
        decision = solvable(G.r, -4 * G.a)
        return Representation(-2, mode, decision.solvable, pell=decision.solution,
                              certificate=decision.certificate)
    raise ValueError("paper-criterion mode only decides the values 0 and -2")


def _represents_split(G: GramMatrix, value: int, s: int) -> Representation:
    """Exact representation when r = s^2 (the form factors over Q)."""
    mode = "exact"
    a, b, c = G.a, G.b, G.c
    if a == 0 and c != 0:
        swapped = _represents_split(GramMatrix(c, b, a), value, s)
        w = swapped.witness
        return Representation(value, mode, swapped.represented,
                              None if w is None else (w[1], w[0]), certificate=swapped.certificate)
    if a == 0:
        # f = 2b m n
        if value == 0:
            return Representation(0, mode, True, (1, 0), certificate={"split": True})
        if value % (2 * b) == 0:
            return Representation(value, mode, True, (1, value // (2 * b)), certificate={"split": True})
        return Representation(value, mode, False, certificate={"split": True, "reason": f"2b={2 * b} does not divide value"})
    if value == 0:
        # 2a f = (d - s n)(d + s n) = 0 with d = s n
        k = gcd(2 * a, s - b)
        n = 2 * a // k
        m = (s - b) // k
        g = gcd(m, n)
        w = (m // g, n // g)
        return Representation(0, mode, True, w, certificate={"split": True, "sqrt_r": s})
    N = 2 * a * value
    best = None
    for e in divisors(N):
        for e1 in (e, -e):
            e2 = N // e1
            if (e1 + e2) % 2 or (e2 - e1) % (2 * s):
                continue
            d, n = (e1 + e2) // 2, (e2 - e1) // (2 * s)
            if (d - b * n) % (2 * a):
                continue
            w = ((d - b * n) // (2 * a), n)
            if best is None or (abs(w[1]), abs(w[0])) < (abs(best[1]), abs(best[0])):
                best = w
    if best is not None:
        return Representation(value, mode, True, best, certificate={"split": True, "sqrt_r": s})
    return Representation(value, mode, False,
                          certificate={"split": True, "sqrt_r": s, "reason": f"no factorisation of {N} lifts"})


def _unit_step(state, t, u, r, M):
    x, y = state
    return ((t * x + r * u * y) % M, (u * x + t * y) % M)


def _orbit_hits(G, rep, modulus, accept):
    """Walk the orbit of rep under the rhs=1 unit modulo `modulus`.

    Returns (cycle_length, [k with accept(state_k)]).
    """
    t, u = fundamental_unit(G.r)
    tm, um, rm = t % modulus, u % modulus, G.r % modulus
    start = (rep[0] % modulus, rep[1] % modulus)
    state, k, hits = start, 0, []
    while True:
        if accept(*state):
            hits.append(k)
        state = _unit_step(state, tm, um, rm, modulus)
        k += 1
        if state == start:
            return k, hits


def _unit_power_apply(rep, k, r):
    t, u = fundamental_unit(r)
    if k < 0:
        u = -u
        k = -k
    x, y = rep
    # (x + y sqrt r)(t + u sqrt r)^k by squaring
    px, py = 1, 0
    bx, by = t, u
    while k:
        if k & 1:
            px, py = px * bx + r * py * by, px * by + py * bx
        bx, by = bx * bx + r * by * by, 2 * bx * by
        k >>= 1
    return x * px + r * y * py, x * py + y * px


def lift_solutions(G: GramMatrix, value: int, extra_modulus: int = 1, extra=None):
    """Search the Pell classes of d^2 - r n^2 = 2a*value for lattice vectors.

    Each solution (d, n) gives the vector ((d - b n)/(2a), n) when 2a | d - b n.
    `extra(d, n)` may impose a further condition that only depends on d, n
    modulo 2a*extra_modulus. Returns (witness or None, per-class log).
    """
    a2 = 2 * G.a
    N = a2 * value
    M = abs(a2) * extra_modulus

    def accept(d, n):
        if (d - G.b * n) % abs(a2):
            return False
        return extra is None or extra(d, n, M)

    log = []
    best = None
    reps = fundamental_solutions(G.r, N)
    for x, y in reps + tuple((-x, -y) for x, y in reps):
        length, hits = _orbit_hits(G, (x, y), M, accept)
        log.append({"class": [x, y], "orbit_length": length, "hits": len(hits)})
        if not hits:
            continue
        for k in (hits[0], hits[0] - length):
            d, n = _unit_power_apply((x, y), k, G.r)
            w = ((d - G.b * n) // a2, n)
            if best is None or (abs(w[1]), abs(w[0])) < (abs(best[1]), abs(best[0])):
                best = w
    return best, log


def _represents_orbit(G: GramMatrix, value: int) -> Representation:
    N = 2 * G.a * value
    decision = solvable(G.r, N)
    if not decision.solvable:
        return Representation(value, "exact", False,
                              certificate={"pell": decision.certificate, "reason": f"d^2 - r n^2 = {N} unsolvable"})
    witness, log = lift_solutions(G, value)
    cert = {"equation": f"d^2 - {G.r}*n^2 = {N}", "modulus": abs(2 * G.a), "classes": log}
    if witness is None:
        cert["reason"] = f"no solution class meets d = b*n mod {abs(2 * G.a)}"
        return Representation(value, "exact", False, pell=decision.solution, certificate=cert)
    assert evaluate(G, witness) == value
    return Representation(value, "exact", True, witness, pell=decision.solution, certificate=cert)


@lru_cache(maxsize=8)
def _scan_order(bound: int):
    # by (|n|, |m|), positive sign before negative, zero vector dropped
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    order = rng[np.lexsort((rng < 0, np.abs(rng)))]
    n_idx = np.repeat(order, order.size)
    m_idx = np.tile(order, order.size)
    keep = (m_idx != 0) | (n_idx != 0)
    return m_idx[keep], n_idx[keep]


def brute_force_values(G: GramMatrix, bound: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Form values over the box |m|, |n| <= bound, in scan order."""
    m, n = _scan_order(bound)
    vals = 2 * G.a * m * m + 2 * G.b * m * n + 2 * G.c * n * n
    return m, n, vals


def brute_force_represents(G: GramMatrix, value: int, bound: int) -> Vector | None:
    """First nonzero v with |m|, |n| <= bound and v.v = value, or None."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if max(abs(G.a), abs(G.b), abs(G.c)) * 6 * bound * bound > 2**62:
        raise OverflowError("box too large for int64 scan")
    m, n, vals = brute_force_values(G, bound)
    idx = np.flatnonzero(vals == value)
    if idx.size == 0:
        return None
    i = idx[0]
    return int(m[i]), int(n[i])


@dataclass(frozen=True)
class BasisChange:
    matrix: intmat.Matrix
    gram: GramMatrix

    @property
    def det(self) -> int:
        return intmat.det2(self.matrix)


def complete_primitive_to_basis(G: GramMatrix, v: Vector) -> BasisChange:
    """Unimodular A with first row v; the new Gram matrix is A Q A^T.

    Second row is (-gamma, delta) with delta*alpha + gamma*beta = 1, choosing
    0 <= delta < |beta| (delta = alpha when beta = 0).
    """
    alpha, beta = v
    if gcd(alpha, beta) != 1:
        raise ValueError(f"{v} is not primitive")
    if beta == 0:
        delta, gamma = alpha, 0
    else:
        delta = pow(alpha, -1, abs(beta)) if abs(beta) > 1 else 0
        gamma = (1 - delta * alpha) // beta
    A = ((alpha, beta), (-gamma, delta))
    Q2 = intmat.mul(intmat.mul(A, G.matrix), intmat.transpose(A))
    new = GramMatrix(Q2[0][0] // 2, Q2[0][1], Q2[1][1] // 2)
    assert intmat.det2(A) == 1 and new.discr == G.discr
    return BasisChange(A, new)
