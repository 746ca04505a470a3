"""Command-line entry point.

Exit codes: 0 decided or verified, 2 inconclusive, 1 usage or hypothesis error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import report
from .autgroup import UNSUPPORTED, classify
from .family import FAILED, HYPOTHESIS_FAILS, VERIFIED, verify_main_theorem
from .gizatullin import NO_INDUCED, full_verdict
from .lattice import AdmissionError, admit, represents
from .pell import is_perfect_square, solvable

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_gram(text: str):
    parts = text.replace(" ", "").split(",")
    if len(parts) != 4:
        raise UsageError(f"--gram needs four comma-separated integers, got {text!r}")
    try:
        p, q, s, t = (int(x) for x in parts)
    except ValueError:
        raise UsageError(f"--gram entries must be integers, got {text!r}") from None
    return [[p, q], [s, t]]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3lat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="classify Aut(S) and apply the Cremona criteria")
    a.add_argument("--gram", required=True, help="row-major entries A,B,C,D")
    a.add_argument("--mode", choices=["exact", "paper-criterion"], default="exact")

    f = sub.add_parser("family", help="verify the main theorem for G_n")
    f.add_argument("--n", type=int, required=True)

    s = sub.add_parser("scan", help="run the family check over a range of n")
    s.add_argument("--from", dest="start", type=int, required=True)
    s.add_argument("--to", dest="stop", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("pell", help="decide x^2 - r y^2 = N")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--rhs", type=int, required=True)

    for sp in (a, f, s, p):
        sp.add_argument("--format", choices=["json", "text"], default="json")
    return parser


def cmd_analyze(args):
    G = admit(parse_gram(args.gram))
    command = {"name": "analyze", "gram": args.gram, "mode": args.mode}
    reps = [represents(G, v, args.mode) for v in (0, -2)]
    readings = {}
    for v in (0, -2):
        readings[str(v)] = {
            "exact": report.representation(represents(G, v, "exact")),
            "paper_criterion": report.representation(represents(G, v, "paper-criterion")),
        }
    results = {"r": G.r, "discr": G.discr, "r_is_square": is_perfect_square(G.r) is not None,
               "quartic_normalized": G.quartic_normalized, "mode": args.mode,
               "representability": readings}
    aut = classify(G, args.mode)
    results["aut"] = aut.classification
    results["aut_details"] = report.aut_results(aut)
    giz = None
    if aut.classification == UNSUPPORTED:
        results["gizatullin"] = None
        code = EXIT_ERROR
        print(f"k3lat: hypothesis violated: {aut.reason}", file=sys.stderr)
    else:
        giz = full_verdict(G, aut, args.mode)
        results["gizatullin"] = giz.summary
        results["gizatullin_details"] = report.gizatullin_results(giz)
        code = EXIT_OK if giz.global_verdict == NO_INDUCED else EXIT_INCONCLUSIVE
    certs = report.analysis_certificates(G, reps, aut, giz)
    return report.envelope(command, G, results, certs), code


def cmd_family(args):
    if args.n < 2:
        raise UsageError(f"--n must be >= 2, got {args.n}")
    rep = verify_main_theorem(args.n)
    doc = report.envelope({"name": "family", "n": args.n}, rep.instance.gram,
                          report.theorem_results(rep), report.theorem_certificates(rep))
    if rep.status == VERIFIED:
        code = EXIT_OK
    elif rep.status in (HYPOTHESIS_FAILS, FAILED):
        print(f"k3lat: n={args.n}: {rep.status}", file=sys.stderr)
        code = EXIT_ERROR
    else:
        code = EXIT_INCONCLUSIVE
    return doc, code


def _scan_one(n: int) -> dict:
    return report.scan_row(verify_main_theorem(n))


def cmd_scan(args):
    if not 2 <= args.start <= args.stop:
        raise UsageError(f"need 2 <= from <= to, got {args.start}..{args.stop}")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    ns = range(args.start, args.stop + 1)
    if args.jobs == 1:
        rows = [_scan_one(n) for n in ns]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_scan_one, ns))
    summary = {
        "count": len(rows),
        "pell_hypothesis_holds": [r["n"] for r in rows if r["pell_hypothesis"] == "holds"],
        "excluded": [r["n"] for r in rows if r["verdict"] == "excluded"],
        "inconclusive": [r["n"] for r in rows if r["verdict"] == "inconclusive"],
    }
    # --jobs is not echoed: the report must not depend on it
    command = {"name": "scan", "from": args.start, "to": args.stop}
    return report.envelope(command, None, {"rows": rows, "summary": summary}, []), EXIT_OK


def cmd_pell(args):
    if args.r <= 0 or is_perfect_square(args.r) is not None:
        raise UsageError(f"--r must be a positive non-square, got {args.r}")
    if args.rhs == 0:
        raise UsageError("--rhs must be nonzero")
    d = solvable(args.r, args.rhs)
    certs = [] if d.solvable else [{"claim": f"{d.certificate['equation']} has no integer solution",
                                    "data": d.certificate}]
    doc = report.envelope({"name": "pell", "r": args.r, "rhs": args.rhs}, None,
                          report.pell_results(d), certs, assumptions=[])
    return doc, EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "family": cmd_family, "scan": cmd_scan, "pell": cmd_pell}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        doc, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"k3lat: usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except AdmissionError as exc:
        print(f"k3lat: inadmissible lattice: {exc}", file=sys.stderr)
        return EXIT_ERROR
    out = report.render_text(doc) if args.format == "text" else report.dumps(doc)
    sys.stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
