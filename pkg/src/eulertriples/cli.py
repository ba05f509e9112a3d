"""Command line front end.

Exit codes: 0 verified / success, 1 verification failed or degenerate,
2 invalid input.  Payloads are JSON on stdout (``--format csv`` for a flat
table); progress goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from fractions import Fraction

from .corpus import specialization_report, verify_corpus
from .exact import format_rational, parse_rational
from .families import (
    DegenerateError,
    family_A_bridge,
    family_A_symbolic,
    family_A_triple,
    family_B_curve_and_points,
    family_B_triple,
    family_C_bridge,
    family_C_closed_form,
    family_C_pair,
)
from .poly import RationalFunction
from .search import SearchConfig, run_search
from .verify import TupleError, check_dq_tuple, check_quadratic_field_strong, check_strong_eulerian

JOBS_ENV = "EULERTRIPLES_JOBS"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _tuple_arg(text: str) -> list[Fraction]:
    return [parse_rational(p) for p in text.split(",") if p.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eulertriples", description="Strong rational D(-1)-triples toolkit")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-v", "--verbose", action="store_true")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="check tuples given as comma-separated rationals")
    v.add_argument("tuples", nargs="*", help='e.g. "1,5/4,14645/484"')
    v.add_argument("--file", help="one tuple per line")
    v.add_argument("--q", type=_rational, default=Fraction(-1))
    v.add_argument("--strong", action="store_true")
    v.add_argument("--eulerian", action="store_true",
                   help="treat inputs as Eulerian x_i (strong, q = -1 after shifting)")
    v.add_argument("--d", type=int, help="verify over Q(sqrt(d))")

    g = sub.add_parser("generate", parents=[common], help="build a triple or pair from a family")
    g.add_argument("--family", choices=("A", "B", "C"), required=True)
    g.add_argument("--u", type=_rational)
    g.add_argument("--w", type=_rational)
    g.add_argument("--t", type=_rational)
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--k", type=int)
    g.add_argument("--closed-form", action="store_true", help="family C closed form b(t)")

    s = sub.add_parser("search", parents=[common], help="height-bounded exhaustive search")
    s.add_argument("--mode", choices=("singletons", "pairs", "triples"), default="triples")
    s.add_argument("--height", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None)
    s.add_argument("--require-one", action="store_true")
    s.add_argument("--no-sieve", action="store_true")
    s.add_argument("--out", help="write JSON lines here instead of stdout")

    sp = sub.add_parser("specialize", parents=[common], help="specialize family A or B at a parameter value")
    sp.add_argument("--family", choices=("A", "B"), required=True)
    sp.add_argument("--at", type=_rational, required=True)

    sy = sub.add_parser("symbolic", parents=[common], help="print parametric formulas")
    sy.add_argument("--family", choices=("A", "B", "C"), default="A")
    sy.add_argument("--m", type=int, default=2)
    sy.add_argument("--show-maps", action="store_true")

    sub.add_parser("corpus", parents=[common], help="re-verify every tuple in the embedded corpus")
    return p


# -- commands -------------------------------------------------------------------

def _verify(args) -> tuple[int, dict, list]:
    tuples = [_tuple_arg(t) for t in args.tuples]
    if args.file:
        with open(args.file) as fh:
            tuples += [_tuple_arg(line) for line in fh if line.strip() and not line.startswith("#")]
    if not tuples:
        raise UsageError("no tuples given")
    reports = []
    for elems in tuples:
        if args.eulerian:
            r = check_strong_eulerian(elems)
        elif args.d is not None:
            r = check_quadratic_field_strong(elems, args.q, args.d, strong=args.strong)
        else:
            r = check_dq_tuple(elems, args.q, strong=args.strong)
        reports.append(r)
    payload = {"verdict": all(r.verdict for r in reports), "reports": [r.to_dict() for r in reports]}
    rows = [["tuple", "i", "j", "value", "witness", "branch"]]
    for k, r in enumerate(reports):
        for c in r.conditions:
            rows.append([k + 1, c.i + 1, c.j + 1, format_rational(c.value),
                         "" if c.witness is None else format_rational(c.witness), c.branch or ""])
    return (EXIT_OK if payload["verdict"] else EXIT_FAIL), payload, rows


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def _generate(args) -> tuple[int, dict, list]:
    if args.family == "A":
        _need(args, "u", "m")
        s = family_A_triple(args.u, args.m)
    elif args.family == "B":
        _need(args, "w", "m")
        s = family_B_triple(args.w, (args.m, args.n))
    elif args.closed_form:
        _need(args, "t")
        s = family_C_closed_form(args.t)
    else:
        _need(args, "t", "k")
        s = family_C_pair(args.t, args.k)
    payload = s.to_dict()
    payload["verdict"] = True
    return EXIT_OK, payload, [["element"]] + [[e] for e in payload["elements"]]


def _search(args) -> tuple[int, dict, list]:
    jobs = args.jobs or int(os.environ.get(JOBS_ENV, "1"))
    cfg = SearchConfig(args.height, args.mode, args.require_one, jobs, not args.no_sieve)
    t0 = time.time()
    print(f"searching {cfg.mode} up to height {cfg.height_bound} with {jobs} job(s)",
          file=sys.stderr)
    found = run_search(cfg)
    if cfg.mode == "singletons":
        lines = [{"elements": [format_rational(a)]} for a in found]
    else:
        lines = [s.to_dict() for s in found]
    print(f"{len(lines)} result(s) in {time.time() - t0:.1f}s", file=sys.stderr)
    text = "".join(json.dumps(line) + "\n" for line in lines)
    summary = {"verdict": True, "mode": cfg.mode, "height": cfg.height_bound,
               "count": len(lines)}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        summary["out"] = args.out
        payload = summary
    else:
        payload = {"_lines": text, **summary}
    rows = [["elements"]] + [[" ".join(line["elements"])] for line in lines]
    return EXIT_OK, payload, rows


def _specialize(args) -> tuple[int, dict, list]:
    rep = specialization_report(args.family, args.at)
    rows = [["key", "value"], ["coefficients", " ".join(rep["coefficients"])]]
    for name, pt in rep["points"].items():
        rows.append([name, pt if pt == "O" else f"[{pt[0]}, {pt[1]}]"])
    return (EXIT_OK if rep["verdict"] else EXIT_FAIL), rep, rows


def _symbolic(args) -> tuple[int, dict, list]:
    payload: dict = {"family": args.family}
    if args.family == "A":
        one, b, c = family_A_symbolic(args.m)
        payload.update({"m": args.m, "b": str(b), "c": str(c),
                        "bc_minus_1_sqrt": str((b * c - 1).sqrt())})
        if args.show_maps:
            payload["maps"] = family_A_bridge(RationalFunction.gen("u")).maps_json()
    elif args.family == "B":
        C, P, Q = family_B_curve_and_points()
        payload.update({"curve": C.to_json(), "P": [str(P.x), str(P.y)], "Q": [str(Q.x), str(Q.y)]})
        if args.show_maps:
            payload["maps"] = family_A_bridge(RationalFunction.gen("u")).maps_json()
            payload["scaling"] = {"u": "(14+w^2)/(4*w)", "X": "16*w^4*x", "Y": "64*w^6*y"}
    else:
        t = RationalFunction.gen("t")
        payload.update({"a": str((t * t + 1) / (2 * t)),
                        "b_closed_form": str((t ** 4 + 18 * t * t + 1) / (8 * t * (t * t + 1)))})
        if args.show_maps:
            payload["maps"] = family_C_bridge(t).maps_json()
    payload["verdict"] = True
    rows = [["key", "value"]] + [[k, json.dumps(v) if not isinstance(v, str) else v]
                                 for k, v in payload.items()]
    return EXIT_OK, payload, rows


def _corpus(args) -> tuple[int, dict, list]:
    rep = verify_corpus()
    specs = [specialization_report("A", 6), specialization_report("B", 6)]
    rep["specializations"] = specs
    rep["verdict"] = rep["verdict"] and all(s["verdict"] for s in specs)
    rows = [["id", "verdict", "elements"]]
    rows += [[e["id"], e["verdict"], " ".join(e["elements"])] for e in rep["entries"]]
    rows += [[f"specialize-{s['family']}-{s['at']}", s["verdict"], ""] for s in specs]
    return (EXIT_OK if rep["verdict"] else EXIT_FAIL), rep, rows


COMMANDS = {
    "verify": _verify,
    "generate": _generate,
    "search": _search,
    "specialize": _specialize,
    "symbolic": _symbolic,
    "corpus": _corpus,
}


def _emit(payload: dict, rows: list, fmt: str, out) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        out.write(buf.getvalue())
        return
    lines = payload.pop("_lines", None)
    if lines is not None:
        out.write(lines)
        return
    json.dump(payload, out, indent=2)
    out.write("\n")


def run(argv=None, out=None) -> int:
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        json.dump({"verdict": False, "error": str(exc)}, out)
        out.write("\n")
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(message)s")
    try:
        code, payload, rows = COMMANDS[args.command](args)
    except (UsageError, TupleError, argparse.ArgumentTypeError) as exc:
        code, payload, rows = EXIT_USAGE, {"verdict": False, "error": str(exc)}, [["error"], [str(exc)]]
    except DegenerateError as exc:
        code, payload, rows = EXIT_FAIL, {"verdict": False, "error": str(exc)}, [["error"], [str(exc)]]
    except (ValueError, ZeroDivisionError) as exc:
        code, payload, rows = EXIT_USAGE, {"verdict": False, "error": str(exc)}, [["error"], [str(exc)]]
    _emit(payload, rows, args.format, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
