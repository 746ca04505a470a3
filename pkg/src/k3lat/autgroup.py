"""Aut(S) for a K3 surface with rank-2 Picard lattice and no 0 / -2 classes.

With no (-2)-curves the ample cone is the positive cone, so Aut(S) is the
group of isometries that preserve the positive cone and act as +-Id on the
discriminant group A(L). Proper ones are powers of the fundamental automorph
h; improper ones are reflections base * (+-h^k). The reflections acting as -Id
on A(L) decide between Z and the infinite dihedral group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import intmat
from .isometry import (
    EquationOneSolution,
    InvariantFailure,
    Isometry,
    discriminant_action,
    generator_h,
    involution_from_solution,
    positive_cone_preserving,
    reflection,
)
from .lattice import (
    GramMatrix,
    Representation,
    Vector,
    evaluate,
    lift_solutions,
    represents,
)
from .pell import PellSolution, divisors, is_perfect_square

ASSUMPTIONS = (
    "Morrison: every even lattice of signature (1, rho-1) with rho <= 10 is the Picard lattice of a K3 surface",
    "Nikulin gluing: an isometry of Pic(S) acting as +-Id on A(Pic(S)) extends to H^2(S, Z) by +-Id on T(S)",
    "Global Torelli: an effective Hodge isometry preserving the ample cone is induced by a unique automorphism",
    "no (-2)-curves, so the ample cone equals the positive cone",
    "involutions are anti-symplectic and infinite-order automorphisms symplectic when rho <= 8 (Nikulin, Bini)",
    "Galluzzi-Lombardo-Peters: without 0 / -2 classes an infinite Aut(S) is Z or D_inf",
)

INFINITE_CYCLIC = "infinite-cyclic"
INFINITE_DIHEDRAL = "infinite-dihedral"
UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class Candidate:
    index: int
    action: str
    certified: bool


@dataclass(frozen=True)
class AutGroupReport:
    gram: GramMatrix
    classification: str
    reason: str = ""
    h: Isometry | None = None
    h_solution: EquationOneSolution | None = None
    pell: PellSolution | None = None
    reference: Vector | None = None
    discriminant_order: int | None = None
    translation_exponent: int | None = None
    cyclic_generator: Isometry | None = None
    involution_generators: tuple[Isometry, ...] = ()
    reflection_base: Isometry | None = None
    reflection_sign: int = 1
    candidates: tuple[Candidate, ...] = ()
    labels: dict = field(default_factory=dict)
    hypotheses: dict = field(default_factory=dict)
    assumptions: tuple[str, ...] = ASSUMPTIONS
    notes: tuple[str, ...] = ()

    def reflection_at(self, k: int) -> Isometry:
        """rho_k = sign * base * h^k, the k-th cone-preserving reflection."""
        rho = self.reflection_base @ (self.h ** k)
        return -rho if self.reflection_sign < 0 else rho


def positive_reference(G: GramMatrix) -> Vector:
    """A short vector of positive square (h1 itself when a > 0)."""
    if G.a > 0:
        return (1, 0)
    if G.c > 0:
        return (0, 1)
    for size in range(1, 1000):
        for v in product(range(-size, size + 1), repeat=2):
            if evaluate(G, v) > 0:
                return v
    raise ValueError("no positive vector found")  # pragma: no cover


def _action_orders(G: GramMatrix, M: intmat.Matrix, limit: int | None = None):
    """(first k >= 1 with M^k = +-Id on A(L), its sign, first k with +Id)."""
    d = abs(intmat.det2(G.matrix))
    adj = intmat.adj2(G.matrix)
    base = intmat.mod(M, d)
    P = base
    first = None
    limit = limit or 4 * d * d + 8
    for k in range(1, limit):
        for eps in (1, -1):
            shifted = intmat.sub(P, intmat.scale(eps, intmat.identity()))
            if all(x % d == 0 for row in intmat.mul(shifted, adj) for x in row):
                if first is None:
                    first = (k, eps)
                if eps == 1:
                    return first[0], first[1], k
        P = intmat.mod(intmat.mul(P, base), d)
    raise InvariantFailure("action on A(L) has no finite order below the search limit")


def _modular_action(G: GramMatrix, M: intmat.Matrix) -> str:
    d = abs(intmat.det2(G.matrix))
    adj = intmat.adj2(G.matrix)
    for eps, name in ((-1, "minus-identity"), (1, "plus-identity")):
        shifted = intmat.sub(M, intmat.scale(eps, intmat.identity()))
        if all(x % d == 0 for row in intmat.mul(shifted, adj) for x in row):
            return name
    return "other"


def find_reflection_base(G: GramMatrix) -> tuple[Isometry | None, str]:
    """Some integral improper isometry, or None if the lattice has none.

    When c | b this is the involution attached to (alpha, beta) = (1, 0). Otherwise
    every integral reflection negates a primitive w with w.w = 2c', c' | r and
    Qw = 0 mod c'; such w are searched for each divisor c' of r.
    """
    if G.c and G.b % G.c == 0:
        return involution_from_solution(G, EquationOneSolution(G, 1, 0)), "(alpha, beta) = (1, 0)"
    Q = G.matrix
    for half in sorted((s * d for d in divisors(G.r) for s in (1, -1)), key=lambda x: (abs(x), x)):
        cm = abs(half)

        def extra(d, n, M, half=half, cm=cm):
            m = ((d - G.b * n) % M) // abs(2 * G.a)
            if G.a < 0:
                m = -m
            return d % cm == 0 and (G.b * m + 2 * G.c * n) % cm == 0

        w, _ = lift_solutions(G, 2 * half, extra_modulus=cm, extra=extra)
        if w is not None:
            rho = reflection(G, w)
            if rho is not None:
                assert intmat.apply(Q, w)[0] % cm == 0
                return rho, f"reflection in w = {w} (w.w = {2 * half})"
    return None, "no integral reflection"


def _label(action: str) -> str:
    return {"plus-identity": "symplectic", "minus-identity": "anti-symplectic"}.get(action, "unlabelled")


def classify(G: GramMatrix, mode: str = "exact", enforce_hypotheses: bool = True) -> AutGroupReport:
    """Decide Aut(S) = Z or D_inf and produce generators.

    `enforce_hypotheses=False` skips the 0 / -2 gate and computes the
    lattice-level group anyway (then it is no longer Aut(S)).
    """
    if is_perfect_square(G.r) is not None:
        return AutGroupReport(G, UNSUPPORTED, f"r={G.r} is a square: isotropic vectors exist")
    rep0 = represents(G, 0, mode)
    rep2 = represents(G, -2, mode)
    hypotheses = {"represents_0": rep0, "represents_minus_2": rep2}
    notes = [
        "the generator h only needs r non-square and no 0 / -2 classes; r > 225 is not used here",
    ]
    if enforce_hypotheses and (rep0 or rep2):
        bad = rep0 if rep0 else rep2
        return AutGroupReport(
            G, UNSUPPORTED,
            f"lattice represents {bad.value} (witness {bad.witness})",
            hypotheses=hypotheses,
        )
    if rep0 or rep2:
        notes.append("0 / -2 gate skipped: the result is the lattice group, not Aut(S)")

    h, sol, pell = generator_h(G)
    ref = positive_reference(G)
    if not positive_cone_preserving(h, ref):
        h = -h
        sol = EquationOneSolution(G, -sol.alpha, -sol.beta)
    m, eps_m, D = _action_orders(G, h.matrix)

    base, base_origin = find_reflection_base(G)
    common = dict(h=h, h_solution=sol, pell=pell, reference=ref, discriminant_order=D,
                  translation_exponent=m, hypotheses=hypotheses)
    if base is None:
        gen = h ** m
        notes.append("the lattice has no integral reflection")
        return AutGroupReport(
            G, INFINITE_CYCLIC, "no integral reflection", cyclic_generator=gen,
            labels={"g": _label(_modular_action(G, gen.matrix))}, notes=tuple(notes), **common,
        )
    notes.append(f"reflections enumerated from {base_origin}")
    sign = 1 if positive_cone_preserving(base, ref) else -1
    d = abs(intmat.det2(G.matrix))
    start = intmat.mod(intmat.scale(sign, base.matrix), d)
    hmod = intmat.mod(h.matrix, d)
    candidates = []
    current = start
    for k in range(D):
        action = _modular_action(G, current)
        candidates.append(Candidate(k, action, action == "minus-identity"))
        current = intmat.mod(intmat.mul(current, hmod), d)

    certified = [c for c in candidates if c.certified]
    partial = AutGroupReport(G, "", reflection_base=base, reflection_sign=sign, **common)
    if not certified:
        gen = h ** m
        return AutGroupReport(
            G, INFINITE_CYCLIC, "no reflection acts as -Id on A(L)", cyclic_generator=gen,
            reflection_base=base, reflection_sign=sign, candidates=tuple(candidates),
            labels={"g": _label(_modular_action(G, gen.matrix))}, notes=tuple(notes), **common,
        )

    # Shift the first certified reflection by h^D (acts as +Id, so it stays
    # certified); with g = h^m the pair (h^D rho, g h^D rho) generates and
    # reproduces the (sigma, tau) of the family.
    translation = h ** m
    rho1 = (h ** D) @ partial.reflection_at(certified[0].index)
    rho2 = translation @ rho1
    for rho in (rho1, rho2):
        if not (rho.is_involution and rho.det == -1 and positive_cone_preserving(rho, ref)):
            raise InvariantFailure(f"certified reflection {rho.matrix} failed re-verification")
    if discriminant_action(rho1).verdict != "minus-identity":
        raise InvariantFailure("first certified reflection does not act as -Id")
    if m != D:
        notes.append(
            "h^m acts as -Id, so the second generator acts as +Id: a symplectic involution, "
            "which cannot occur geometrically for Picard number 2"
        )
    labels = {
        "sigma": _label(discriminant_action(rho1).verdict),
        "tau": _label(discriminant_action(rho2).verdict),
        "g": _label(discriminant_action(translation).verdict),
    }
    return AutGroupReport(
        G, INFINITE_DIHEDRAL, f"reflection rho_{certified[0].index} acts as -Id on A(L)",
        cyclic_generator=translation, involution_generators=(rho1, rho2),
        reflection_base=base, reflection_sign=sign, candidates=tuple(candidates),
        labels=labels, notes=tuple(notes), **common,
    )


SIGMA_TOKENS = {"s", "sigma", "σ"}
TAU_TOKENS = {"t", "tau", "τ"}


def word_reduce(word) -> tuple[int, bool]:
    """Normal form of a word in the two involutions.

    Every element is (tau sigma)^l or (tau sigma)^l sigma. Returns (l, is_reflection).
    """
    ell, refl = 0, False
    for tok in word:
        if tok in SIGMA_TOKENS:
            refl = not refl
        elif tok in TAU_TOKENS:
            # (ts)^l s t = (ts)^(l-1);  (ts)^l t = (ts)^(l+1) s
            ell, refl = (ell - 1, False) if refl else (ell + 1, True)
        else:
            raise ValueError(f"unknown generator token {tok!r}")
    return ell, refl


def reflection_class(ell: int) -> str:
    """Conjugacy class of the reflection (tau sigma)^l sigma."""
    return "sigma" if ell % 2 == 0 else "tau"


def word_matrix(report: AutGroupReport, word) -> Isometry:
    """Multiply a word out, with sigma, tau the report's two involution generators."""
    sigma, tau = report.involution_generators
    M = Isometry(report.gram, intmat.identity())
    for tok in word:
        if tok in SIGMA_TOKENS:
            M = M @ sigma
        elif tok in TAU_TOKENS:
            M = M @ tau
        else:
            raise ValueError(f"unknown generator token {tok!r}")
    return M
