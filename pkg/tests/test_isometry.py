from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from k3lat import intmat
from k3lat.family import sigma_matrix
from k3lat.isometry import (
    EquationOneSolution,
    InvariantFailure,
    NotAnIsometry,
    discriminant_action,
    fixed_primitive_vector,
    generator_h,
    identity,
    involution_from_solution,
    positive_cone_preserving,
    power_with_recursion,
    shifted_inverse_product,
    verify,
)
from k3lat.lattice import GramMatrix, evaluate
from k3lat.pell import is_perfect_square, minimal_solution
from oracles import naive_discriminant_action, small_forms

G8 = GramMatrix(2, 16, 1)
SIGMA8 = ((127, 1008), (-16, -127))
TAU8 = ((2015999, 16000992), (-254000, -2015999))
H8 = ((127, 8), (-16, -1))
GSTAR8 = ((16001, 1008), (-2016, -127))


def F(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def test_verify_examples():
    assert verify(G8, SIGMA8).det == -1
    assert verify(G8, [[1, 0], [0, 1]]).det == 1
    with pytest.raises(NotAnIsometry, match="entry"):
        verify(G8, [[1, 1], [0, 1]])


def test_discriminant_examples():
    s = discriminant_action(verify(G8, SIGMA8))
    assert s.verdict == "minus-identity"
    assert s.minus_witness == F([[64, -8], [-8, 1]])
    h = discriminant_action(verify(G8, H8))
    assert h.verdict == "other"
    assert h.plus_witness[0][0] == Fraction(-1, 2)
    assert not intmat.is_integral(h.minus_witness)
    g = discriminant_action(verify(G8, GSTAR8))
    assert g.verdict == "plus-identity"
    assert g.plus_witness == F([[-64, 1016], [8, -128]])
    assert s.invariants == (2, 124)


def test_generator_h_examples():
    h, sol, pell = generator_h(G8)
    assert h.matrix == H8 and (sol.alpha, sol.beta) == (127, 8)
    assert (2 * sol.alpha - 16 * sol.beta, sol.beta) == (pell.x, pell.y) == (126, 8)
    h2, sol2, _ = generator_h(GramMatrix(2, 4, 1))
    assert h2.matrix == ((7, 2), (-4, -1)) and (sol2.alpha, sol2.beta) == (7, 2)
    with pytest.raises(ValueError):
        generator_h(GramMatrix(1, 5, 4))  # r = 9


def test_power_with_recursion_examples():
    h, sol, _ = generator_h(G8)
    g, s2 = power_with_recursion(h, sol, 2)
    assert g.matrix == GSTAR8 and (s2.alpha, s2.beta) == (16001, 1008)
    assert power_with_recursion(h, sol, 1)[0].matrix == H8


def test_recursion_matches_power_on_family():
    for n in range(2, 21):
        G = GramMatrix(2, 2 * n, 1)
        h, sol, _ = generator_h(G)
        for k in range(1, 21):
            power_with_recursion(h, sol, k)


def test_involution_examples():
    assert involution_from_solution(G8, EquationOneSolution(G8, 127, 1008)).matrix == SIGMA8
    assert involution_from_solution(G8, EquationOneSolution(G8, 1, 0)).matrix == ((1, 0), (-16, -1))
    assert involution_from_solution(G8, EquationOneSolution(G8, 2015999, 16000992)).matrix == TAU8
    with pytest.raises(ValueError):
        EquationOneSolution(G8, 2, 0)


def test_fixed_vector_examples():
    assert fixed_primitive_vector(verify(G8, SIGMA8), 1) == (8, -1)
    assert evaluate(G8, (8, -1)) == 2
    v = fixed_primitive_vector(verify(G8, TAU8), 1)
    assert v == (1008, -127) and evaluate(G8, v) == 2
    with pytest.raises(ValueError):
        fixed_primitive_vector(identity(G8), 1)
    assert fixed_primitive_vector(identity(G8), -1) is None


def test_positive_cone_examples():
    assert positive_cone_preserving(verify(G8, SIGMA8), (1, 0))
    assert not positive_cone_preserving(verify(G8, [[-1, 0], [0, -1]]), (1, 0))
    assert positive_cone_preserving(verify(G8, H8), (1, 0))
    with pytest.raises(ValueError):
        positive_cone_preserving(verify(G8, H8), (1, -8))  # square 4 - 256 + 2*64 < 0


unimodular = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(
    lambda v: v != (0, 0) and gcd(*v) == 1)


@given(st.integers(2, 20), unimodular, st.integers(0, 3), st.sampled_from(["sigma", "h", "g", "tau"]))
@settings(max_examples=200, deadline=None)
def test_conjugated_isometries(n, v, k, which):
    # change basis by a unimodular P; M becomes P^-1 M P on the lattice with Gram P^T Q P
    G = GramMatrix(2, 2 * n, 1)
    h, sol, _ = generator_h(G)
    sigma = verify(G, sigma_matrix(n))
    M = {"sigma": sigma, "h": h ** (k + 1), "g": (h @ h) ** (k + 1), "tau": (h @ h) @ sigma}[which]
    a, b = v
    g_, x, y = intmat.ext_gcd(a, b)
    P = ((a, -y), (b, x))  # det = a x + b y = 1
    Q2 = intmat.mul(intmat.mul(intmat.transpose(P), G.matrix), P)
    G2 = GramMatrix(Q2[0][0] // 2, Q2[0][1], Q2[1][1] // 2)
    M2 = intmat.mul(intmat.mul(intmat.inverse_unimodular(P), M.matrix), P)
    iso2 = verify(G2, M2)
    act1, act2 = discriminant_action(M), discriminant_action(iso2)
    assert act1.verdict == act2.verdict == naive_discriminant_action(G2.matrix, M2)


def test_discriminant_routes_agree_on_small_forms():
    for a, b, c in small_forms(4):
        G = GramMatrix(a, b, c)
        if G.c == 0:
            continue
        h, sol, _ = generator_h(G)
        for k in range(1, 5):
            M = h ** k
            assert discriminant_action(M).verdict == naive_discriminant_action(G.matrix, M.matrix)
            Mn = -M
            assert discriminant_action(Mn).verdict == naive_discriminant_action(G.matrix, Mn.matrix)


def test_equation_one_closed_under_h_powers():
    for n in (2, 5, 8, 13):
        G = GramMatrix(2, 2 * n, 1)
        h, sol, _ = generator_h(G)
        for k in range(1, 11):
            _, sk = power_with_recursion(h, sol, k)
            lhs = Fraction(sk.alpha**2) - Fraction(G.b, G.c) * sk.alpha * sk.beta + Fraction(G.a, G.c) * sk.beta**2
            assert lhs == 1


@given(st.integers(-8, 8), st.integers(-12, 12), st.integers(-8, 8))
@settings(max_examples=200, deadline=None)
def test_generator_h_general_forms(a, b, c):
    r = b * b - 4 * a * c
    assume(r > 0 and is_perfect_square(r) is None and c != 0)
    G = GramMatrix(a, b, c)
    h, sol, pell = generator_h(G)
    assert h.det == 1 and h.trace == pell.x
    # trace of h is the x of the minimal x^2 - r' y^2 = 4 solution
    g = gcd(gcd(a, b), c)
    assert pell == minimal_solution(r // (g * g), 4)


def test_involution_property_random():
    for n in range(2, 12):
        G = GramMatrix(2, 2 * n, 1)
        h, sol, _ = generator_h(G)
        for k in range(1, 6):
            _, sk = power_with_recursion(h, sol, k)
            M = involution_from_solution(G, sk)
            assert intmat.mul(M.matrix, M.matrix) == intmat.identity()
            v = fixed_primitive_vector(M, 1)
            assert M.apply(v) == v and gcd(*v) == 1


def test_shifted_inverse_product_is_exact():
    P = shifted_inverse_product(verify(G8, SIGMA8), -1)
    assert all(isinstance(x, Fraction) for row in P for x in row)


def test_invariant_failure_is_runtime_error():
    assert issubclass(InvariantFailure, RuntimeError)
