"""Which automorphisms can come from a Cremona transformation of P^3.

Two rules are combined. A quartic K3 surface with r > 225 and no 0 / -2
classes has no curves of degree below 16, which rules out automorphisms induced
by a non-linear Cremona map for every embedding. An automorphism induced by a
projective linear map fixes the hyperplane class H (H.H = 4): infinite-order
automorphisms never do, and an involution does only if its fixed sublattice
contains a class of square 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import intmat
from .autgroup import INFINITE_CYCLIC, INFINITE_DIHEDRAL, AutGroupReport
from .isometry import Isometry, fixed_primitive_vector
from .lattice import (
    BasisChange,
    GramMatrix,
    Representation,
    Vector,
    complete_primitive_to_basis,
    evaluate,
    represents,
)

THRESHOLD = 225
MAX_DEGREE = 15

NO_INDUCED = "no-nontrivial-automorphism-induced"
INCONCLUSIVE = "inconclusive"
EXCLUDED_BY_R = "excluded-by-r>225"

EXCLUDED_INFINITE = "excluded: infinite order"
EXCLUDED_NO_FIXED = "excluded: no fixed square-4 class"
NOT_EXCLUDED = "not-excluded"

ASSUMPTIONS = (
    "Quartic classes: for a primitive class of square 4 without 0 / -2 classes, H or -H is very ample",
    "Takahashi: with no curves of degree < 16 no automorphism is induced by a non-linear Cremona map",
    "Oguiso: an automorphism of infinite order is not the restriction of a linear automorphism of P^3",
)

EMBEDDING_JUSTIFICATION = (
    "every embedding as a quartic is given by a primitive class of square 4; completing it to a "
    "lattice basis keeps r and the 0 / -2 answers unchanged, so the r > 225 test covers all embeddings"
)


@dataclass(frozen=True)
class SmallCurveResult:
    holds: bool
    r: int
    threshold: int
    reason: str
    quartic_vector: Vector | None = None
    basis_change: BasisChange | None = None
    represents_0: Representation | None = None
    represents_minus_2: Representation | None = None
    degree_ledger: tuple[dict, ...] = ()


def _degree_ledger(G: GramMatrix) -> tuple[dict, ...]:
    # 4 C^2 = d^2 - r n^2 in a quartic basis; d <= 15 and r > 225 force n = 0
    rows = []
    for d in range(1, MAX_DEGREE + 1):
        rows.append({
            "degree": d,
            "d_squared": d * d,
            "forced_n": 0,
            "argument": f"C^2 >= 2 needs d^2 >= r n^2; {d * d} < {G.r} so n = 0",
            "class": [d // 4, 0] if d % 4 == 0 else None,
        })
    return tuple(rows)


def quartic_normalization(G: GramMatrix) -> tuple[Vector | None, BasisChange | None]:
    """A primitive class of square 4 and a basis starting with it."""
    if G.a == 2:
        return (1, 0), complete_primitive_to_basis(G, (1, 0))
    rep = represents(G, 4, "exact")
    if not rep:
        return None, None
    v = rep.witness  # square 4 is never twice an even square, so v is primitive
    return v, complete_primitive_to_basis(G, v)


def small_curve_criterion(G: GramMatrix, mode: str = "exact") -> SmallCurveResult:
    """r > 225 with no 0 / -2 classes, read in a quartic basis."""
    v, change = quartic_normalization(G)
    if change is None:
        return SmallCurveResult(False, G.r, THRESHOLD, "no quartic normalization witnessed")
    Gq = change.gram
    rep0 = represents(Gq, 0, mode)
    rep2 = represents(Gq, -2, mode)
    common = dict(quartic_vector=v, basis_change=change, represents_0=rep0, represents_minus_2=rep2)
    if Gq.r <= THRESHOLD:
        return SmallCurveResult(False, Gq.r, THRESHOLD, f"r={Gq.r} ≤ {THRESHOLD}", **common)
    if rep0 or rep2:
        bad = rep0 if rep0 else rep2
        return SmallCurveResult(False, Gq.r, THRESHOLD,
                                f"lattice represents {bad.value} (witness {bad.witness})", **common)
    return SmallCurveResult(True, Gq.r, THRESHOLD, f"r={Gq.r} > {THRESHOLD}",
                            degree_ledger=_degree_ledger(Gq), **common)


@dataclass(frozen=True)
class LinearVerdict:
    order: str
    verdict: str
    fixed_vector: Vector | None = None
    fixed_square: int | None = None
    reason: str = ""

    @property
    def excluded(self) -> bool:
        return self.verdict != NOT_EXCLUDED


def linear_verdict(iso: Isometry, order: str) -> LinearVerdict:
    """Can iso be the action of a projective linear map fixing H?"""
    if order == "infinite":
        return LinearVerdict(order, EXCLUDED_INFINITE, reason="infinite order")
    if order != "finite":
        raise ValueError(f"order must be 'finite' or 'infinite', got {order!r}")
    if not iso.is_involution:
        raise ValueError(f"{iso.matrix} is not an involution")
    if iso.matrix == intmat.identity():
        return LinearVerdict(order, NOT_EXCLUDED, reason="identity")
    v = fixed_primitive_vector(iso, 1)
    if v is None:
        return LinearVerdict(order, EXCLUDED_NO_FIXED, reason="no nonzero fixed class")
    q = evaluate(iso.gram, v)
    # lambda^2 q = 4 is solvable only for q in {1, 4}, and q is even
    if q in (1, 4):
        return LinearVerdict(order, NOT_EXCLUDED, v, q, f"fixed class {v} has square {q}")
    return LinearVerdict(order, EXCLUDED_NO_FIXED, v, q,
                         f"fixed classes are multiples of {v}, squares {q}*lambda^2 != 4")


@dataclass(frozen=True)
class GeneratorVerdict:
    name: str
    matrix: intmat.Matrix
    verdict: LinearVerdict


@dataclass(frozen=True)
class GizatullinReport:
    gram: GramMatrix
    small_curve: SmallCurveResult | None
    birational_verdict: str
    per_generator: tuple[GeneratorVerdict, ...]
    global_verdict: str
    reasons: tuple[str, ...] = ()
    reduction: str = ""
    embedding_justification: str = EMBEDDING_JUSTIFICATION
    assumptions: tuple[str, ...] = field(default=ASSUMPTIONS)

    @property
    def summary(self) -> str:
        if self.global_verdict == INCONCLUSIVE:
            return f"{INCONCLUSIVE}: " + "; ".join(self.reasons)
        return self.global_verdict


REDUCTION_DIHEDRAL = (
    "every element is (tau sigma)^l or (tau sigma)^l sigma; the first kind has infinite order "
    "when l != 0, the second is conjugate to sigma (l even) or tau (l odd), and conjugation "
    "preserves the square of the fixed class"
)
REDUCTION_CYCLIC = "every nontrivial element is g^k with k != 0, of infinite order"


def full_verdict(G: GramMatrix, report: AutGroupReport, mode: str = "exact") -> GizatullinReport:
    if report.classification not in (INFINITE_CYCLIC, INFINITE_DIHEDRAL):
        return GizatullinReport(G, None, f"{NOT_EXCLUDED}(automorphism group not classified)", (),
                                INCONCLUSIVE, (f"unsupported: {report.reason}",))
    small = small_curve_criterion(G, mode)
    birational = EXCLUDED_BY_R if small.holds else f"{NOT_EXCLUDED}({small.reason})"
    gens = [GeneratorVerdict("g", report.cyclic_generator.matrix,
                             linear_verdict(report.cyclic_generator, "infinite"))]
    if report.classification == INFINITE_DIHEDRAL:
        sigma, tau = report.involution_generators
        gens = [
            GeneratorVerdict("sigma", sigma.matrix, linear_verdict(sigma, "finite")),
            GeneratorVerdict("tau", tau.matrix, linear_verdict(tau, "finite")),
        ] + gens
        reduction = REDUCTION_DIHEDRAL
    else:
        reduction = REDUCTION_CYCLIC
    reasons = [] if small.holds else [small.reason]
    reasons += [f"{g.name}: {g.verdict.reason}" for g in gens if not g.verdict.excluded]
    verdict = NO_INDUCED if not reasons else INCONCLUSIVE
    return GizatullinReport(G, small, birational, tuple(gens), verdict, tuple(reasons), reduction)
