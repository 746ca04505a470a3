from math import isqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.solvers.diophantine.diophantine import diop_DN

from k3lat import pell
from oracles import SCAN_CAP, least_y_rhs4_convergents, least_y_rhs4_scan
from k3lat.pell import (
    PellSolution,
    cf_sqrt,
    convergents,
    fundamental_solutions,
    fundamental_unit,
    is_perfect_square,
    minimal_solution,
    nagell_bound,
    solvable,
)

NONSQUARES = st.integers(2, 3000).filter(lambda r: is_perfect_square(r) is None)


def test_perfect_square_examples():
    assert is_perfect_square(248) is None
    assert is_perfect_square(0) == 0
    assert is_perfect_square(256) == 16
    assert is_perfect_square(-4) is None


def test_cf_examples():
    assert cf_sqrt(2).a0 == 1 and cf_sqrt(2).period == (2,)
    cf = cf_sqrt(248)
    assert cf.a0 == 15 and cf.period[-1] == 30
    with pytest.raises(ValueError):
        cf_sqrt(4)


@given(NONSQUARES)
def test_cf_shape(r):
    cf = cf_sqrt(r)
    assert cf.a0 == isqrt(r)
    assert cf.period[-1] == 2 * cf.a0
    assert all(a > 0 for a in cf.period)


@given(NONSQUARES)
def test_convergent_residuals_small(r):
    gen = convergents(r)
    for _ in range(cf_sqrt(r).period_length + 1):
        p, q = next(gen)
        assert abs(p * p - r * q * q) ** 2 < (2 * isqrt(r) + 2) ** 2


def test_minimal_solution_examples():
    s = minimal_solution(248, 4)
    assert (s.x, s.y) == (126, 8)
    assert all(is_perfect_square(4 + 248 * y * y) is None for y in range(1, 8))
    assert (minimal_solution(3, 1).x, minimal_solution(3, 1).y) == (2, 1)
    assert (minimal_solution(8, 4).x, minimal_solution(8, 4).y) == (6, 2)
    with pytest.raises(ValueError):
        minimal_solution(9, 1)
    with pytest.raises(ValueError):
        minimal_solution(7, 2)


def test_solution_checked_on_construction():
    with pytest.raises(ValueError):
        PellSolution(3, 1, 7, 1)


@given(NONSQUARES, st.integers(1, 6), st.integers(1, 6))
def test_brahmagupta_composition_stays_on_norm_one(r, i, j):
    t, u = fundamental_unit(r)
    x1, y1, x2, y2 = t, u, t, u
    for _ in range(i - 1):
        x1, y1 = x1 * t + r * y1 * u, x1 * u + y1 * t
    for _ in range(j - 1):
        x2, y2 = x2 * t + r * y2 * u, x2 * u + y2 * t
    PellSolution(x1 * x2 + r * y1 * y2, x1 * y2 + x2 * y1, r, 1)


@pytest.mark.parametrize("r", [2, 3, 5, 6, 7, 13, 29, 61, 94])
def test_all_small_unit_solutions_are_powers(r):
    t, u = fundamental_unit(r)
    powers = set()
    x, y = t, u
    while y <= 10**6:
        powers.add((x, y))
        x, y = x * t + r * y * u, x * u + y * t
    for y in range(1, 10**4):
        x = is_perfect_square(1 + r * y * y)
        if x is not None:
            assert (x, y) in powers


def test_rhs4_minimality_sweep():
    for r in range(2, 2001):
        if is_perfect_square(r) is not None:
            continue
        y = minimal_solution(r, 4).y
        assert least_y_rhs4_scan(r, y) is None, r
        if y > SCAN_CAP:
            assert least_y_rhs4_convergents(r, y) is None, r


@given(NONSQUARES)
@settings(max_examples=60)
def test_rhs4_against_sympy(r):
    sols = [(abs(x), abs(y)) for x, y in diop_DN(r, 4) if y]
    s = minimal_solution(r, 4)
    assert s.y == min(y for _, y in sols)


def test_solvable_examples():
    d = solvable(248, -8)
    assert not d and d.certificate["obstruction_modulus"] == 31
    assert d.certificate["bound"] == nagell_bound(248, -8)
    assert {"equation", "fundamental_unit", "bound", "prefilters"} <= set(d.certificate)
    d = solvable(2, -1)
    assert (d.solution.x, d.solution.y) == (1, 1)
    d = solvable(92, 4)
    assert (d.solution.x, d.solution.y) == (48, 5)


def _scan_table(r: int, ymax: int, nmax: int) -> dict[int, int]:
    """Least y in [0, ymax] for each |N| <= nmax with N + r y^2 a square."""
    y = np.arange(0, ymax + 1, dtype=np.int64)
    ry2 = r * y * y
    x0 = np.floor(np.sqrt(ry2.astype(np.float64))).astype(np.int64)
    best = {}
    for k in range(-9, 10):
        x = x0 + k
        ok = x >= 0
        N = x * x - ry2
        ok &= np.abs(N) <= nmax
        for NN, yy in zip(N[ok].tolist(), y[ok].tolist()):
            if NN not in best or yy < best[NN]:
                best[NN] = yy
    return best


def test_solvable_against_scan_table():
    # every (r, N) with r <= 500, |N| <= 50 against a plain scan of y <= 10^4
    for r in range(2, 501):
        if is_perfect_square(r) is not None:
            continue
        table = _scan_table(r, 10**4, 50)
        for N in range(-50, 51):
            if N == 0:
                continue
            d = solvable(r, N)
            found = table.get(N)
            if found is None:
                assert not d or d.solution.y > 10**4, (r, N)
            else:
                assert d, (r, N)
                # y = 0 only happens for square N; the scan's least positive y then matches
                if found > 0:
                    assert d.solution.y == found, (r, N)


@given(NONSQUARES.filter(lambda r: r < 300), st.integers(-40, 40).filter(bool))
@settings(max_examples=300)
def test_solvable_against_sympy(r, N):
    sols = diop_DN(r, N)
    d = solvable(r, N)
    assert bool(d) == bool(sols)
    if d:
        assert d.solution.x ** 2 - r * d.solution.y ** 2 == N


@given(NONSQUARES.filter(lambda r: r < 400), st.integers(-60, 60).filter(bool))
@settings(max_examples=200)
def test_lmm_route_matches_bound_scan(r, N):
    scan = solvable(r, N)
    old = pell.SCAN_LIMIT
    pell.SCAN_LIMIT = -1
    try:
        lmm = solvable(r, N)
    finally:
        pell.SCAN_LIMIT = old
    assert bool(scan) == bool(lmm)
    if scan:
        assert scan.solution.y == lmm.solution.y


@given(NONSQUARES.filter(lambda r: r < 1000), st.integers(-100, 100).filter(bool))
@settings(max_examples=200)
def test_fundamental_solutions_are_solutions(r, N):
    for x, y in fundamental_solutions(r, N):
        assert x * x - r * y * y == N and y >= 0


def test_no_certificate_rechecks():
    # a third party re-runs the bounded scan from the certificate alone
    for r, N in [(248, -8), (316, -8), (7, -2), (94, -3)]:
        d = solvable(r, N)
        if d:
            continue
        B = d.certificate["bound"]
        assert all(is_perfect_square(N + r * y * y) is None for y in range(0, B + 1))
