"""Continued fractions of sqrt(r) and exact solvers for x^2 - r*y^2 = N.

Everything is integer arithmetic. Decisions for general N come with a
certificate dict that a third party can re-check: the Nagell search bound
derived from the fundamental unit, the congruence prefilters that were tried,
and (for large bounds) the residue classes walked by the
Lagrange-Matthews-Mollin reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

# Above this many candidate y values the bound scan is replaced by LMM.
SCAN_LIMIT = 200_000


def is_perfect_square(r: int) -> int | None:
    """Return the integer square root of r if r is a perfect square, else None."""
    if r < 0:
        return None
    s = isqrt(r)
    return s if s * s == r else None


def _require_nonsquare(r: int) -> None:
    if r <= 0:
        raise ValueError(f"r must be positive, got {r}")
    if is_perfect_square(r) is not None:
        raise ValueError(f"r={r} is a perfect square")


@dataclass(frozen=True)
class ContinuedFraction:
    r: int
    a0: int
    period: tuple[int, ...]

    @property
    def period_length(self) -> int:
        return len(self.period)

    def partial_quotients(self, count: int) -> list[int]:
        out = [self.a0]
        while len(out) < count:
            out.extend(self.period)
        return out[:count]


@lru_cache(maxsize=4096)
def cf_sqrt(r: int) -> ContinuedFraction:
    """Periodic continued fraction of sqrt(r) for non-square r > 0."""
    _require_nonsquare(r)
    a0 = isqrt(r)
    m, d, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = d * a - m
        d = (r - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return ContinuedFraction(r, a0, tuple(period))


def convergents(r: int):
    """Yield convergents (p_k, q_k) of sqrt(r) forever."""
    cf = cf_sqrt(r)
    p_prev, p = 1, cf.a0
    q_prev, q = 0, 1
    yield p, q
    while True:
        for a in cf.period:
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
            yield p, q


@dataclass(frozen=True)
class PellSolution:
    """A verified solution of x^2 - r*y^2 = rhs."""

    x: int
    y: int
    r: int
    rhs: int
    tag: str = "fundamental"

    def __post_init__(self):
        if self.x * self.x - self.r * self.y * self.y != self.rhs:
            raise ValueError(
                f"({self.x}, {self.y}) does not solve x^2 - {self.r} y^2 = {self.rhs}"
            )

    def as_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "r": self.r, "rhs": self.rhs, "tag": self.tag}


@lru_cache(maxsize=4096)
def fundamental_unit(r: int) -> tuple[int, int]:
    """Smallest (t, u) with t, u > 0 and t^2 - r u^2 = 1."""
    cf = cf_sqrt(r)
    p_len = cf.period_length
    for k, (p, q) in enumerate(convergents(r)):
        if k == p_len - 1:
            break
    if p * p - r * q * q == 1:
        return p, q
    # odd period: the period-end convergent solves the -1 equation
    return p * p + r * q * q, 2 * p * q


@lru_cache(maxsize=4096)
def negative_unit(r: int) -> tuple[int, int] | None:
    """Smallest positive solution of t^2 - r u^2 = -1, or None."""
    cf = cf_sqrt(r)
    if cf.period_length % 2 == 0:
        return None
    for k, (p, q) in enumerate(convergents(r)):
        if k == cf.period_length - 1:
            return p, q
    return None  # pragma: no cover


def minimal_solution(r: int, rhs: int = 1) -> PellSolution:
    """Minimal positive solution of x^2 - r y^2 = rhs for rhs in {1, 4}.

    For rhs=4 three candidate routes are combined and the smallest y wins:
    doubling the rhs=1 solution, the reduction x = 2x' when 4 | r, and a
    convergent scan for odd solutions (with a direct scan for r <= 16, where
    Legendre's criterion does not cover |rhs| = 4).
    """
    _require_nonsquare(r)
    t1, u1 = fundamental_unit(r)
    if rhs == 1:
        return PellSolution(t1, u1, r, 1, "fundamental")
    if rhs != 4:
        raise ValueError(f"rhs must be 1 or 4, got {rhs}")

    candidates = [(2 * u1, 2 * t1, "doubled")]
    if r % 4 == 0:
        t, u = fundamental_unit(r // 4)
        candidates.append((u, 2 * t, "reduced"))
    for p, q in convergents(r):
        if q > 2 * u1:
            break
        if p * p - r * q * q == 4:
            candidates.append((q, p, "convergent"))
            break
    if r <= 16:
        for y in range(1, 2 * u1):
            x = is_perfect_square(4 + r * y * y)
            if x is not None:
                candidates.append((y, x, "scan"))
                break
    y, x, route = min(candidates)
    return PellSolution(x, y, r, 4, f"fundamental ({route})")


def nagell_bound(r: int, N: int) -> int:
    """Largest y that needs checking so every solution class of x^2 - r y^2 = N is seen.

    Uses the fundamental unit (t1, u1) of the rhs=1 equation:
    y <= u1*sqrt(N)/sqrt(2(t1+1)) for N > 0, y <= u1*sqrt(-N)/sqrt(2(t1-1)) for N < 0.
    """
    t1, u1 = fundamental_unit(r)
    if N > 0:
        return isqrt(u1 * u1 * N // (2 * (t1 + 1)))
    return isqrt(u1 * u1 * (-N) // (2 * (t1 - 1)))


def _prime_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prefilter_moduli(r: int) -> list[int]:
    return sorted(set([8, 16] + _prime_divisors(r)))


def locally_solvable(r: int, N: int, m: int) -> bool:
    """Whether x^2 - r y^2 = N has a solution modulo m."""
    squares = {x * x % m for x in range(m)}
    if r % m == 0:
        return N % m in squares
    return any((N + r * y * y) % m in squares for y in range(m))


def divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _floor_quadratic(P: int, Q: int, D: int, s: int) -> int:
    # floor((P + sqrt(D)) / Q) for non-square D with s = isqrt(D)
    if Q > 0:
        return (P + s) // Q
    return (P + s + 1) // Q


def _pqa_first_unit(P0: int, Q0: int, D: int) -> tuple[int, int] | None:
    """Run the PQa recurrence from (P0 + sqrt D)/Q0 until |Q_i| = 1 (i >= 1).

    Returns (G_{i-1}, B_{i-1}) or None when the expansion cycles first.
    """
    s = isqrt(D)
    B2, B1 = 1, 0
    G2, G1 = -P0, Q0
    P, Q = P0, Q0
    seen = set()
    i = 0
    while True:
        a = _floor_quadratic(P, Q, D, s)
        B2, B1 = B1, a * B1 + B2
        G2, G1 = G1, a * G1 + G2
        P = a * Q - P
        Q = (D - P * P) // Q
        i += 1
        if abs(Q) == 1:
            return G1, B1
        if (P, Q) in seen:
            return None
        seen.add((P, Q))


def _reduce_in_class(x: int, y: int, r: int) -> tuple[int, int]:
    """Move (x, y) within its class (multiplication by the rhs=1 unit) to minimal |y|."""
    t, u = fundamental_unit(r)
    while True:
        up = (x * t + r * y * u, x * u + y * t)
        down = (x * t - r * y * u, y * t - x * u)
        if abs(up[1]) < abs(y):
            x, y = up
        elif abs(down[1]) < abs(y):
            x, y = down
        else:
            break
    if y < 0 or (y == 0 and x < 0):
        x, y = -x, -y
    return x, y


@lru_cache(maxsize=65536)
def fundamental_solutions(r: int, N: int) -> tuple[tuple[int, int], ...]:
    """Representatives (x, y), y >= 0 minimal in class, of every solution class of x^2 - r y^2 = N.

    Classes are orbits under multiplication by +-(t1 + u1 sqrt r)^k. Both a class
    and its conjugate are listed. Lagrange-Matthews-Mollin algorithm.
    """
    _require_nonsquare(r)
    if N == 0:
        raise ValueError("N must be nonzero")
    neg = negative_unit(r)
    reps = set()
    for f in divisors(N):
        if N % (f * f):
            continue
        m = N // (f * f)
        am = abs(m)
        lo = -(am // 2) + (1 if am % 2 == 0 else 0) if am > 1 else 0
        for z in range(lo, am // 2 + 1):
            if (z * z - r) % am:
                continue
            found = _pqa_first_unit(z, am, r)
            if found is None:
                continue
            g, b = found
            value = g * g - r * b * b
            if value == m:
                x, y = f * g, f * b
            elif value == -m and neg is not None:
                t, u = neg
                x, y = f * (g * t + b * r * u), f * (g * u + b * t)
            else:
                continue
            x, y = _reduce_in_class(x, y, r)
            reps.add((x, y))
            reps.add(_reduce_in_class(-x, y, r))
    return tuple(sorted(reps, key=lambda p: (p[1], abs(p[0]), p[0])))


@dataclass(frozen=True)
class PellDecision:
    r: int
    N: int
    solvable: bool
    solution: PellSolution | None
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.solvable


def solvable(r: int, N: int) -> PellDecision:
    """Decide whether x^2 - r y^2 = N has an integer solution.

    A "yes" carries the solution with least y > 0 (every solvable equation has
    one, since classes are infinite). A "no" carries the search
    bound and the prefilter moduli, plus which modulus (if any) obstructs.
    """
    _require_nonsquare(r)
    if N == 0:
        raise ValueError("N must be nonzero")
    t1, u1 = fundamental_unit(r)
    bound = nagell_bound(r, N)
    moduli = prefilter_moduli(r)
    cert = {
        "equation": f"x^2 - {r}*y^2 = {N}",
        "fundamental_unit": [t1, u1],
        "bound": bound,
        "prefilters": moduli,
    }
    for m in moduli:
        if not locally_solvable(r, N, m):
            cert["method"] = "congruence"
            cert["obstruction_modulus"] = m
            return PellDecision(r, N, False, None, cert)
    cert["obstruction_modulus"] = None
    if bound <= SCAN_LIMIT:
        cert["method"] = "bound-scan"
        for y in range(1, bound + 1):
            x = is_perfect_square(N + r * y * y)
            if x is not None:
                return PellDecision(r, N, True, PellSolution(x, y, r, N, "least positive y"), cert)
        positive = []
    else:
        cert["method"] = "lmm"
        positive = [(x, y) for x, y in fundamental_solutions(r, N) if y > 0]
    if positive:
        x, y = positive[0]
        return PellDecision(r, N, True, PellSolution(abs(x), y, r, N, "least positive y"), cert)
    root = is_perfect_square(N)
    if root is not None:
        # only the trivial classes (+-root, 0); their first positive-y member
        return PellDecision(
            r, N, True, PellSolution(root * t1, root * u1, r, N, "least positive y"), cert
        )
    return PellDecision(r, N, False, None, cert)
