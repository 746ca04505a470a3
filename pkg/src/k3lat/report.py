"""JSON report envelopes.

Every integer is written as a decimal string so consumers never lose
precision; booleans and None stay native. Output is deterministic: no
timestamps, fixed key order, and `dumps(loads(s)) == s`.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .autgroup import ASSUMPTIONS as AUT_ASSUMPTIONS
from .autgroup import AutGroupReport
from .family import TheoremReport
from .gizatullin import ASSUMPTIONS as GIZ_ASSUMPTIONS
from .gizatullin import EXCLUDED_BY_R, GizatullinReport, NO_INDUCED
from .isometry import Isometry, discriminant_action
from .lattice import GramMatrix, Representation
from .pell import PellDecision, PellSolution

SCHEMA = "k3lat/1"
ALL_ASSUMPTIONS = list(AUT_ASSUMPTIONS) + list(GIZ_ASSUMPTIONS)


def plain(obj):
    """Recursively turn results into JSON-ready values with string integers."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(x) for x in obj]
    if isinstance(obj, GramMatrix):
        return plain(obj.matrix)
    if isinstance(obj, Isometry):
        return plain(obj.matrix)
    if isinstance(obj, PellSolution):
        return plain(obj.as_dict())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def envelope(command: dict, gram: GramMatrix | None, results: dict,
             certificates: list, assumptions: list | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "tool": {"name": "k3lat", "version": __version__},
        "command": plain(command),
        "input": {"gram": plain(gram)},
        "results": plain(results),
        "assumptions": list(ALL_ASSUMPTIONS if assumptions is None else assumptions),
        "certificates": plain(certificates),
    }


def pell_results(d: PellDecision) -> dict:
    out = {"equation": d.certificate["equation"], "solvable": d.solvable}
    if d.solution is not None:
        out["solution"] = [d.solution.x, d.solution.y]
    out.update({k: v for k, v in d.certificate.items() if k != "equation"})
    return out


def representation(rep: Representation) -> dict:
    out = {"value": rep.value, "mode": rep.mode, "represented": rep.represented,
           "witness": rep.witness}
    if rep.pell is not None:
        out["pell"] = [rep.pell.x, rep.pell.y]
    if not rep.represented:
        out["certificate"] = rep.certificate
    return out


def _action(iso: Isometry) -> dict:
    act = discriminant_action(iso)
    return {
        "verdict": act.verdict,
        "plus_shift_times_inverse": act.plus_witness,
        "minus_shift_times_inverse": act.minus_witness,
        "snf_invariants": act.invariants,
        "snf_induced": act.induced,
    }


def aut_results(rep: AutGroupReport) -> dict:
    out = {"classification": rep.classification, "reason": rep.reason}
    if rep.h is None:
        return out
    out.update({
        "h": rep.h,
        "h_solution": [rep.h_solution.alpha, rep.h_solution.beta],
        "pell_4": [rep.pell.x, rep.pell.y],
        "discriminant_order_of_h": rep.discriminant_order,
        "translation_exponent": rep.translation_exponent,
        "cyclic_generator": rep.cyclic_generator,
        "involution_generators": list(rep.involution_generators),
        "labels": rep.labels,
        "candidates": [{"k": c.index, "action": c.action, "certified": c.certified}
                       for c in rep.candidates],
        "notes": list(rep.notes),
        "assumes_torelli_and_gluing": True,
    })
    return out


def gizatullin_results(rep: GizatullinReport) -> dict:
    out = {
        "global_verdict": rep.global_verdict,
        "summary": rep.summary,
        "reasons": list(rep.reasons),
        "birational_verdict": rep.birational_verdict,
        "reduction": rep.reduction,
        "embedding_independence": rep.embedding_justification,
        "per_generator": [
            {"generator": g.name, "matrix": g.matrix, "order": g.verdict.order,
             "verdict": g.verdict.verdict, "fixed_vector": g.verdict.fixed_vector,
             "fixed_square": g.verdict.fixed_square, "reason": g.verdict.reason}
            for g in rep.per_generator
        ],
    }
    sc = rep.small_curve
    if sc is not None:
        out["small_curve"] = {
            "holds": sc.holds, "r": sc.r, "threshold": sc.threshold, "reason": sc.reason,
            "quartic_vector": sc.quartic_vector,
            "basis_change": None if sc.basis_change is None else sc.basis_change.matrix,
            "quartic_gram": None if sc.basis_change is None else sc.basis_change.gram,
            "degree_ledger": list(sc.degree_ledger),
        }
    return out


def analysis_certificates(G: GramMatrix, reps: list[Representation], aut: AutGroupReport,
                          giz: GizatullinReport | None) -> list:
    certs = []
    for rep in reps:
        if not rep.represented:
            certs.append({"claim": f"no vector of square {rep.value} ({rep.mode})",
                          "data": rep.certificate})
    gens = []
    if aut.cyclic_generator is not None:
        gens.append(("g", aut.cyclic_generator))
    if aut.h is not None:
        gens.append(("h", aut.h))
    gens += list(zip(("sigma", "tau"), aut.involution_generators))
    for name, iso in gens:
        certs.append({"claim": f"discriminant action of {name}", "data": _action(iso)})
    if giz is not None:
        for g in giz.per_generator:
            if g.verdict.excluded:
                certs.append({"claim": f"{g.name}: {g.verdict.verdict}",
                              "data": {"fixed_vector": g.verdict.fixed_vector,
                                       "fixed_square": g.verdict.fixed_square,
                                       "reason": g.verdict.reason}})
        if giz.birational_verdict == EXCLUDED_BY_R:
            certs.append({"claim": "no curves of degree < 16",
                          "data": {"degree_ledger": list(giz.small_curve.degree_ledger)}})
    return certs


def theorem_results(rep: TheoremReport) -> dict:
    inst = rep.instance
    out = {
        "n": rep.n,
        "r": inst.r,
        "status": rep.status,
        "matrices": {"sigma": inst.sigma, "tau": inst.tau, "g_star": inst.g_star, "h": inst.h},
        "clauses": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.clauses],
        "pell_hypothesis": pell_results(rep.pell_hypothesis),
    }
    if rep.aut is not None:
        out["aut"] = aut_results(rep.aut)
    if rep.gizatullin is not None:
        out["gizatullin"] = gizatullin_results(rep.gizatullin)
    return out


def theorem_certificates(rep: TheoremReport) -> list:
    return [{"claim": c.name, "data": c.certificate} for c in rep.clauses if c.certificate]


def scan_row(rep: TheoremReport) -> dict:
    holds = not rep.pell_hypothesis.solvable
    if rep.gizatullin is not None and rep.gizatullin.global_verdict == NO_INDUCED:
        verdict = "excluded"
    else:
        verdict = "inconclusive"
    return {
        "n": rep.n,
        "r": rep.instance.r,
        "pell_hypothesis": "holds" if holds else "fails",
        "aut": rep.aut.classification if rep.aut is not None else None,
        "verdict": verdict,
        "status": rep.status,
    }


def render_text(doc: dict) -> str:
    lines = [f"k3lat {doc['tool']['version']} ({doc['schema']})"]

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_short(v)}")
        elif isinstance(obj, list):
            for item in obj:
                if isinstance(item, (dict, list)) and not _flat(item):
                    lines.append(f"{pad}-")
                    walk(item, indent + 1)
                else:
                    lines.append(f"{pad}- {_short(item)}")

    walk({"command": doc["command"], "input": doc["input"], "results": doc["results"]}, 0)
    return "\n".join(lines) + "\n"


def _flat(v) -> bool:
    # lists of scalars or nested lists of scalars (matrices) print on one line
    if isinstance(v, list):
        return all(isinstance(x, (str, bool, type(None))) or (isinstance(x, list) and _flat(x)) for x in v)
    return False


def _short(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)
