import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from k3lat import intmat
from k3lat.lattice import (
    AdmissionError,
    GramMatrix,
    admit,
    brute_force_represents,
    complete_primitive_to_basis,
    evaluate,
    is_primitive,
    pairing,
    represents,
)
from k3lat.pell import is_perfect_square

G8 = GramMatrix(2, 16, 1)

coef = st.integers(-15, 15)
vec = st.tuples(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))


@st.composite
def admissible(draw, lim=15):
    a, b, c = draw(st.integers(-lim, lim)), draw(st.integers(-2 * lim, 2 * lim)), draw(st.integers(-lim, lim))
    assume(b * b - 4 * a * c > 0)
    return GramMatrix(a, b, c)


def test_admit_examples():
    G = admit([[4, 16], [16, 2]])
    assert G.r == 248 and G.quartic_normalized
    with pytest.raises(AdmissionError, match="signature"):
        admit([[2, 0], [0, 2]])
    assert admit([[4, 3], [3, 2]]).r == -(8 - 9) == 1
    with pytest.raises(AdmissionError, match="even"):
        admit([[3, 1], [1, 2]])
    with pytest.raises(AdmissionError, match="symmetric"):
        admit([[4, 1], [2, 2]])
    with pytest.raises(AdmissionError, match="signature"):
        admit([[2, 2], [2, 2]])


def test_r_is_minus_det():
    for G in (G8, GramMatrix(-3, 5, 7), GramMatrix(0, 3, 0)):
        assert G.r == -intmat.det2(G.matrix)


def test_evaluate_examples():
    assert evaluate(G8, (-8, 1)) == 2
    assert evaluate(G8, (0, 0)) == 0
    assert evaluate(G8, (1, 0)) == 4


@given(admissible(), vec)
def test_pell_identity(G, v):
    # 2a v.v = d^2 - r n^2 with d = 2a m + b n; for a = 2 this reads 4 v.v = ...
    m, n = v
    d = 2 * G.a * m + G.b * n
    assert 2 * G.a * evaluate(G, v) == d * d - G.r * n * n


@given(st.integers(-200, 200), st.integers(-200, 200), vec)
def test_quartic_pell_identity(b, l, v):
    G = GramMatrix(2, b, l)
    m, n = v
    assert 4 * evaluate(G, v) == (4 * m + b * n) ** 2 - G.r * n * n


@given(admissible(), vec, st.integers(-50, 50))
def test_quadratic_scaling(G, v, k):
    assert evaluate(G, (k * v[0], k * v[1])) == k * k * evaluate(G, v)
    assert evaluate(G, v) % 2 == 0
    assert pairing(G, v, v) == evaluate(G, v)


def test_represents_examples():
    assert not represents(G8, 0, "paper-criterion")
    assert not represents(G8, -2, "paper-criterion")
    assert not represents(G8, 0, "exact")
    assert not represents(G8, -2, "exact")
    rep = represents(G8, 2, "exact")
    assert rep and evaluate(G8, rep.witness) == 2
    # the witness minimises (|n|, |m|); (-8, 1) is another square-2 vector
    assert rep.witness == (0, 1) and evaluate(G8, (-8, 1)) == 2
    with pytest.raises(ValueError):
        represents(G8, 2, "paper-criterion")


def test_paper_criterion_is_weaker_than_exact():
    # a Pell solution need not lift to a lattice vector; such lattices exist
    differs = []
    for a in range(-6, 7):
        for b in range(-8, 9):
            for c in range(-6, 7):
                G = GramMatrix(a, b, c)
                if G.r <= 0 or is_perfect_square(G.r) is not None:
                    continue
                p, e = represents(G, -2, "paper-criterion"), represents(G, -2, "exact")
                assert not (e and not p)  # exact yes implies the Pell equation is solvable
                if p and not e:
                    differs.append(G)
    assert differs


def test_brute_force_examples():
    assert brute_force_represents(G8, 4, 2) == (1, 0)
    assert brute_force_represents(G8, -2, 50) is None
    assert brute_force_represents(G8, 0, 50) is None
    with pytest.raises(ValueError):
        brute_force_represents(G8, 4, 0)


def test_brute_force_scan_order():
    # (|n|, |m|) ascending, positive sign first
    G = GramMatrix(1, 0, -1)
    assert brute_force_represents(G, 2, 3) == (1, 0)
    assert brute_force_represents(G, -2, 3) == (0, 1)
    assert brute_force_represents(G, 0, 3) == (1, 1)


@given(admissible(), st.sampled_from([0, -2, 2, 4, 6, -4, 8]))
@settings(max_examples=300, deadline=None)
def test_exact_agrees_with_oracle(G, value):
    assume(G.r < 5000 and is_perfect_square(G.r) is None)
    oracle = brute_force_represents(G, value, 100)
    rep = represents(G, value, "exact")
    if oracle is not None:
        assert rep
    if rep:
        assert evaluate(G, rep.witness) == value and rep.witness != (0, 0)
        if oracle is None:
            assert max(abs(rep.witness[0]), abs(rep.witness[1])) > 100


@given(admissible(), st.sampled_from([0, -2, 2, 4, -6]))
@settings(max_examples=200, deadline=None)
def test_exact_handles_square_r(G, value):
    assume(is_perfect_square(G.r) is not None)
    oracle = brute_force_represents(G, value, 60)
    rep = represents(G, value, "exact")
    if oracle is not None:
        assert rep
    if rep:
        assert evaluate(G, rep.witness) == value and rep.witness != (0, 0)


@given(admissible(lim=15))
@settings(max_examples=300, deadline=None)
def test_value_zero_iff_square(G):
    oracle = brute_force_represents(G, 0, 100)
    square = is_perfect_square(G.r) is not None
    assert bool(represents(G, 0, "exact")) == square
    assert bool(represents(G, 0, "paper-criterion")) == square
    if oracle is not None:
        assert square
    if square:
        w = represents(G, 0, "exact").witness
        assert evaluate(G, w) == 0 and w != (0, 0)


def test_basis_completion_examples():
    A = complete_primitive_to_basis(G8, (3, 2))
    assert A.matrix == ((3, 2), (1, 1)) and A.det == 1
    assert complete_primitive_to_basis(G8, (1, 0)).matrix == ((1, 0), (0, 1))
    with pytest.raises(ValueError):
        complete_primitive_to_basis(G8, (2, 4))


@given(admissible(), st.tuples(st.integers(-500, 500), st.integers(-500, 500)))
def test_basis_completion_properties(G, v):
    assume(v != (0, 0) and is_primitive(v))
    change = complete_primitive_to_basis(G, v)
    assert change.det == 1
    assert change.matrix[0] == v
    assert change.gram.discr == G.discr
    assert 2 * change.gram.a == evaluate(G, v)
    Q2 = intmat.mul(intmat.mul(change.matrix, G.matrix), intmat.transpose(change.matrix))
    assert Q2 == change.gram.matrix
