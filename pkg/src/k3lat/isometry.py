"""Integer isometries of a rank-2 lattice.

Convention: vectors are columns, an isometry M acts by v -> M v, and
composition is the matrix product. M is an isometry iff M^T Q M = Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import intmat
from .lattice import GramMatrix, Vector, evaluate, pairing
from .pell import PellSolution, is_perfect_square, minimal_solution


class NotAnIsometry(ValueError):
    pass


class UnsupportedNormalization(ValueError):
    pass


class InvariantFailure(RuntimeError):
    """Two independent computations that must agree did not."""


@dataclass(frozen=True)
class Isometry:
    gram: GramMatrix
    matrix: intmat.Matrix

    def __post_init__(self):
        Q = self.gram.matrix
        diff = intmat.sub(intmat.mul(intmat.mul(intmat.transpose(self.matrix), Q), self.matrix), Q)
        for i in range(2):
            for j in range(2):
                if diff[i][j]:
                    raise NotAnIsometry(
                        f"M^T Q M - Q has entry {diff[i][j]} at ({i}, {j}) for M={self.matrix}"
                    )

    @property
    def det(self) -> int:
        return intmat.det2(self.matrix)

    @property
    def trace(self) -> int:
        return self.matrix[0][0] + self.matrix[1][1]

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.gram, intmat.mul(self.matrix, other.matrix))

    def __neg__(self) -> "Isometry":
        return Isometry(self.gram, intmat.neg(self.matrix))

    def __pow__(self, k: int) -> "Isometry":
        return Isometry(self.gram, intmat.power(self.matrix, k))

    def inverse(self) -> "Isometry":
        return Isometry(self.gram, intmat.inverse_unimodular(self.matrix))

    def apply(self, v: Vector) -> Vector:
        return intmat.apply(self.matrix, v)

    @property
    def is_involution(self) -> bool:
        return intmat.mul(self.matrix, self.matrix) == intmat.identity()


def verify(G: GramMatrix, M) -> Isometry:
    return Isometry(G, intmat.as_matrix(M))


def identity(G: GramMatrix) -> Isometry:
    return Isometry(G, intmat.identity())


@dataclass(frozen=True)
class EquationOneSolution:
    """Integers (alpha, beta) with alpha^2 - (b/c) alpha beta + (a/c) beta^2 = 1."""

    gram: GramMatrix
    alpha: int
    beta: int

    def __post_init__(self):
        G = self.gram
        if G.c == 0:
            raise UnsupportedNormalization("c = 0: the equation has no meaning")
        lhs = (Fraction(self.alpha**2) - Fraction(G.b, G.c) * self.alpha * self.beta
               + Fraction(G.a, G.c) * self.beta**2)
        if lhs != 1:
            raise ValueError(f"({self.alpha}, {self.beta}) gives {lhs}, not 1")


def translation_matrix(G: GramMatrix, s: EquationOneSolution) -> intmat.Matrix:
    """[[alpha, beta], [-(a/c) beta, alpha - (b/c) beta]]."""
    lo = Fraction(-G.a * s.beta, G.c)
    lr = s.alpha - Fraction(G.b * s.beta, G.c)
    if lo.denominator != 1 or lr.denominator != 1:
        raise UnsupportedNormalization(f"non-integral entries for (alpha, beta)=({s.alpha}, {s.beta})")
    return ((s.alpha, s.beta), (int(lo), int(lr)))


def generator_h(G: GramMatrix) -> tuple[Isometry, EquationOneSolution, PellSolution]:
    """The proper isometry attached to the minimal positive solution of x^2 - r' y^2 = 4.

    Here r' = r/g^2 for g = gcd(a, b, c) (r' = r for primitive forms). With
    beta_1 = (c/g) y and alpha_1 = (x + (b/g) y)/2 every entry is integral.
    """
    if is_perfect_square(G.r) is not None:
        raise ValueError(f"r={G.r} is a square: the form is isotropic")
    if G.c == 0:
        raise UnsupportedNormalization("c = 0")
    g = gcd(gcd(G.a, G.b), G.c)
    pell = minimal_solution(G.r // (g * g), 4)
    x, y = pell.x, pell.y
    beta1 = (G.c // g) * y
    alpha1 = (x + (G.b // g) * y) // 2
    sol = EquationOneSolution(G, alpha1, beta1)
    h = Isometry(G, translation_matrix(G, sol))
    return h, sol, pell


def power_with_recursion(h: Isometry, sol: EquationOneSolution, k: int) -> tuple[Isometry, EquationOneSolution]:
    """h^k, computed both as a matrix power and by the (alpha_k, beta_k) recursion.

    alpha_k = alpha_1 alpha_{k-1} - (a/c) beta_1 beta_{k-1}
    beta_k  = alpha_1 beta_{k-1} + alpha_{k-1} beta_1 - (b/c) beta_1 beta_{k-1}
    """
    if k < 1:
        raise ValueError("k must be positive")
    G = h.gram
    a_c, b_c = Fraction(G.a, G.c), Fraction(G.b, G.c)
    a1, b1 = sol.alpha, sol.beta
    ak, bk = Fraction(a1), Fraction(b1)
    for _ in range(k - 1):
        ak, bk = a1 * ak - a_c * b1 * bk, a1 * bk + ak * b1 - b_c * b1 * bk
    if ak.denominator != 1 or bk.denominator != 1:
        raise InvariantFailure(f"recursion produced non-integers at k={k}")
    solk = EquationOneSolution(G, int(ak), int(bk))
    by_recursion = translation_matrix(G, solk)
    by_power = intmat.power(h.matrix, k)
    if by_recursion != by_power:
        raise InvariantFailure(f"h^{k}: recursion {by_recursion} != power {by_power}")
    return Isometry(G, by_power), solk


def involution_from_solution(G: GramMatrix, s: EquationOneSolution) -> Isometry:
    """[[alpha, beta], [-(b/c) alpha + (a/c) beta, -alpha]]."""
    lower = Fraction(-G.b * s.alpha + G.a * s.beta, G.c)
    if lower.denominator != 1:
        raise UnsupportedNormalization(
            f"(alpha, beta)=({s.alpha}, {s.beta}) gives non-integral entry {lower}"
        )
    M = ((s.alpha, s.beta), (int(lower), -s.alpha))
    iso = Isometry(G, M)
    if not iso.is_involution:
        raise InvariantFailure(f"{M} does not square to the identity")
    return iso


def reflection(G: GramMatrix, w: Vector) -> Isometry | None:
    """Reflection negating w, if it is integral on the lattice."""
    ww = evaluate(G, w)
    if ww == 0:
        return None
    cols = []
    for e in ((1, 0), (0, 1)):
        coef = Fraction(2 * pairing(G, e, w), ww)
        if coef.denominator != 1:
            return None
        cols.append((e[0] - int(coef) * w[0], e[1] - int(coef) * w[1]))
    return Isometry(G, intmat.transpose(tuple(cols)))


def shifted_inverse_product(iso: Isometry, eps: int) -> tuple[tuple[Fraction, ...], ...]:
    """(M - eps I) Q^{-1}, exactly."""
    Q = iso.gram.matrix
    shifted = intmat.sub(iso.matrix, intmat.scale(eps, intmat.identity()))
    return intmat.fraction_matrix(intmat.mul(shifted, intmat.adj2(Q)), intmat.det2(Q))


@dataclass(frozen=True)
class DiscriminantAction:
    verdict: str  # plus-identity | minus-identity | other
    plus_witness: tuple
    minus_witness: tuple
    invariants: tuple[int, int]
    induced: intmat.Matrix
    snf_verdict: str

    @property
    def two_elementary(self) -> bool:
        return all(d in (1, 2) for d in self.invariants)


def _snf_action(iso: Isometry) -> tuple[tuple[int, int], intmat.Matrix, str]:
    # A(L) = L*/L; x -> Qx identifies it with Z^2/QZ^2, on which M acts as (M^T)^{-1}.
    Q = iso.gram.matrix
    U, D, V = intmat.smith_normal_form(Q)
    invariants = (D[0][0], D[1][1])
    action = intmat.inverse_unimodular(intmat.transpose(iso.matrix))
    induced = intmat.mul(intmat.mul(U, action), intmat.inverse_unimodular(U))

    def acts_as(eps):
        diff = intmat.sub(induced, intmat.scale(eps, intmat.identity()))
        return all(diff[i][j] % invariants[i] == 0 for i in range(2) for j in range(2))

    reduced = tuple(tuple(induced[i][j] % invariants[i] for j in range(2)) for i in range(2))
    if acts_as(1):
        return invariants, reduced, "plus-identity"
    if acts_as(-1):
        return invariants, reduced, "minus-identity"
    return invariants, reduced, "other"


def discriminant_action(iso: Isometry) -> DiscriminantAction:
    """How iso acts on the discriminant group, by two independent routes.

    Integrality of (M - eps I) Q^{-1} decides eps = +1 then eps = -1; the Smith
    normal form of Q gives A(L) explicitly and the induced map is compared
    against +-Id there. The routes must agree.
    """
    plus = shifted_inverse_product(iso, 1)
    minus = shifted_inverse_product(iso, -1)
    if intmat.is_integral(plus):
        verdict = "plus-identity"
    elif intmat.is_integral(minus):
        verdict = "minus-identity"
    else:
        verdict = "other"
    invariants, induced, snf_verdict = _snf_action(iso)
    if snf_verdict != verdict:
        raise InvariantFailure(f"discriminant action: integrality says {verdict}, SNF says {snf_verdict}")
    return DiscriminantAction(verdict, plus, minus, invariants, induced, snf_verdict)


def acts_as(iso: Isometry, eps: int, modulus: int | None = None) -> bool:
    """Cheap test of (M - eps I) adj(Q) = 0 mod det(Q), i.e. M acts as eps*Id on A(L)."""
    Q = iso.gram.matrix
    d = abs(intmat.det2(Q))
    shifted = intmat.sub(iso.matrix, intmat.scale(eps, intmat.identity()))
    prod = intmat.mul(shifted, intmat.adj2(Q))
    return all(x % d == 0 for row in prod for x in row)


def fixed_primitive_vector(iso: Isometry, eigenvalue: int) -> Vector | None:
    """Primitive generator of ker(M - eps I), first nonzero coordinate positive."""
    K = intmat.sub(iso.matrix, intmat.scale(eigenvalue, intmat.identity()))
    if K == ((0, 0), (0, 0)):
        raise ValueError(f"M = {eigenvalue}*I: the eigenspace has rank 2")
    if intmat.det2(K):
        return None
    p, q = K[0] if K[0] != (0, 0) else K[1]
    g = gcd(p, q)
    v = (q // g, -p // g)
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        v = (-v[0], -v[1])
    assert iso.apply(v) == tuple(eigenvalue * x for x in v)
    return v


def positive_cone_preserving(iso: Isometry, reference: Vector) -> bool:
    if evaluate(iso.gram, reference) <= 0:
        raise ValueError(f"reference {reference} does not have positive square")
    return pairing(iso.gram, iso.apply(reference), reference) > 0
