"""The family G_n = [[4, 2n], [2n, 2]], r = 4n^2 - 8, with closed-form isometries."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import intmat
from .autgroup import INFINITE_DIHEDRAL, AutGroupReport, classify
from .gizatullin import NO_INDUCED, THRESHOLD, GizatullinReport, full_verdict
from .isometry import (
    Isometry,
    InvariantFailure,
    discriminant_action,
    fixed_primitive_vector,
    generator_h,
    shifted_inverse_product,
)
from .lattice import GramMatrix, admit, evaluate, represents
from .pell import PellDecision, is_perfect_square, minimal_solution, solvable

VERIFIED = "verified"
INCONCLUSIVE = "inconclusive"
HYPOTHESIS_FAILS = "hypothesis-fails"
FAILED = "failed"


def gram(n: int) -> GramMatrix:
    return admit([[4, 2 * n], [2 * n, 2]])


def sigma_matrix(n: int) -> intmat.Matrix:
    return ((2 * n**2 - 1, 2 * n**3 - 2 * n), (-2 * n, -2 * n**2 + 1))


def tau_matrix(n: int) -> intmat.Matrix:
    return (
        (8 * n**6 - 20 * n**4 + 12 * n**2 - 1, 8 * n**7 - 24 * n**5 + 20 * n**3 - 4 * n),
        (-8 * n**5 + 16 * n**3 - 6 * n, -8 * n**6 + 20 * n**4 - 12 * n**2 + 1),
    )


def g_star_matrix(n: int) -> intmat.Matrix:
    return ((4 * n**4 - 6 * n**2 + 1, 2 * n**3 - 2 * n), (-4 * n**3 + 4 * n, -2 * n**2 + 1))


def h_matrix(n: int) -> intmat.Matrix:
    return ((2 * n**2 - 1, n), (-2 * n, -1))


@dataclass(frozen=True)
class FamilyInstance:
    n: int
    gram: GramMatrix
    sigma: Isometry
    tau: Isometry
    g_star: Isometry
    h: Isometry

    @property
    def r(self) -> int:
        return self.gram.r


def instantiate(n: int) -> FamilyInstance:
    """Evaluate the closed forms at n and check them against the generic pipeline."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    G = gram(n)
    # n^2 - 2 sits strictly between (n-1)^2 and n^2 once n >= 2
    if is_perfect_square(G.r) is not None:
        raise InvariantFailure(f"r={G.r} is a square")
    sigma = Isometry(G, sigma_matrix(n))
    tau = Isometry(G, tau_matrix(n))
    g_star = Isometry(G, g_star_matrix(n))
    h = Isometry(G, h_matrix(n))
    if not (sigma.is_involution and tau.is_involution):
        raise InvariantFailure(f"sigma or tau is not an involution at n={n}")
    built, _, _ = generator_h(G)
    if built.matrix != h.matrix:
        raise InvariantFailure(f"closed-form h {h.matrix} != generator_h {built.matrix}")
    if (h @ h).matrix != g_star.matrix:
        raise InvariantFailure(f"h^2 != g* at n={n}")
    return FamilyInstance(n, G, sigma, tau, g_star, h)


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    detail: str = ""
    certificate: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TheoremReport:
    n: int
    instance: FamilyInstance
    status: str
    clauses: tuple[Clause, ...]
    pell_hypothesis: PellDecision
    aut: AutGroupReport | None
    gizatullin: GizatullinReport | None

    def clause(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def hypothesis_holds(self) -> bool:
        return self.clause("pell_minus_8_unsolvable").passed and self.clause("r_nonsquare").passed


def _action_clause(name: str, iso: Isometry, expected: str) -> Clause:
    act = discriminant_action(iso)
    eps = {"plus-identity": 1, "minus-identity": -1}.get(expected, 1)
    cert = {"verdict": act.verdict, "shifted_inverse": shifted_inverse_product(iso, eps)}
    return Clause(name, act.verdict == expected, f"acts as {act.verdict}", cert)


def verify_main_theorem(n: int, mode: str = "exact") -> TheoremReport:
    """Check every clause of the main theorem for one n, with certificates.

    Accepts n >= 2 so smaller members can be inspected; the Gizatullin clause
    then fails through the r > 225 gate and the status is inconclusive.
    """
    inst = instantiate(n)
    G, r = inst.gram, inst.r
    clauses = [Clause("admissible", True, f"even, signature (1,1), r={r}")]
    clauses.append(Clause("r_nonsquare", is_perfect_square(r) is None, f"r={r}"))

    pell = solvable(r, -8)
    clauses.append(Clause("pell_minus_8_unsolvable", not pell.solvable,
                          f"z^2 - {r} beta^2 = -8 " + ("solvable" if pell.solvable else "unsolvable"),
                          pell.certificate))
    rep0, rep2 = represents(G, 0, mode), represents(G, -2, mode)
    clauses.append(Clause("no_0_or_minus_2_classes", not (rep0 or rep2),
                          f"represents 0: {bool(rep0)}, represents -2: {bool(rep2)}"))

    minimal = minimal_solution(r, 4)
    expected = (2 * n * n - 2, n)
    clauses.append(Clause("minimal_pell_4", (minimal.x, minimal.y) == expected,
                          f"({minimal.x}, {minimal.y}), expected {expected}"))
    clauses.append(Clause("h_closed_form", True, f"h={inst.h.matrix} matches generator_h"))
    clauses.append(Clause("g_star_is_tau_sigma", (inst.tau @ inst.sigma).matrix == inst.g_star.matrix,
                          "g* = h^2 = tau sigma"))

    clauses.append(_action_clause("sigma_minus_identity", inst.sigma, "minus-identity"))
    clauses.append(_action_clause("tau_minus_identity", inst.tau, "minus-identity"))
    clauses.append(_action_clause("g_star_plus_identity", inst.g_star, "plus-identity"))
    clauses.append(_action_clause("h_neither", inst.h, "other"))

    for name, iso in (("sigma", inst.sigma), ("tau", inst.tau)):
        v = fixed_primitive_vector(iso, 1)
        q = evaluate(G, v)
        clauses.append(Clause(f"{name}_fixed_square_2", q == 2, f"fixed vector {v}, square {q}"))

    hypothesis_ok = not pell.solvable and not (rep0 or rep2)
    aut = gv = None
    if hypothesis_ok:
        aut = classify(G, mode)
        gens = tuple(g.matrix for g in aut.involution_generators)
        ok = (aut.classification == INFINITE_DIHEDRAL
              and gens == (inst.sigma.matrix, inst.tau.matrix)
              and aut.cyclic_generator.matrix == inst.g_star.matrix)
        clauses.append(Clause("aut_infinite_dihedral", ok,
                              f"{aut.classification}, generators {gens}"))
        gv = full_verdict(G, aut, mode)
        clauses.append(Clause("r_above_threshold", r > THRESHOLD, f"r={r} vs {THRESHOLD}"))
        clauses.append(Clause("gizatullin", gv.global_verdict == NO_INDUCED, gv.summary))

    core = [c for c in clauses if c.name not in ("r_above_threshold", "gizatullin")]
    if not hypothesis_ok:
        status = HYPOTHESIS_FAILS
    elif not all(c.passed for c in core):
        status = FAILED
    elif all(c.passed for c in clauses):
        status = VERIFIED
    else:
        status = INCONCLUSIVE
    return TheoremReport(n, inst, status, tuple(clauses), pell, aut, gv)
