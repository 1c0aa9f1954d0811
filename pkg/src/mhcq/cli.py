"""Command-line front end.

    mhcq verify   --structure FILE [--window R] [--expect VERDICT] --report FILE
    mhcq classify --max-order N --report FILE
    mhcq ydq      --instance FILE [--transports auto|always|never] --report FILE

Each command writes a JSON report, a TSV of leaf checks next to it and a PNG
figure.  Worker count comes from ``--workers`` or ``MHCQ_WORKERS``; reports
do not depend on it.  Exit status: 0 on success, 1 when the outcome differs
from the expectation, 2 for invalid input.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import __version__
from .classify import classify
from .coquasi import build_antipode, checks, run_suite, unit_probe
from .io import REPORT_FORMAT, InputError, load_instance, load_structure, sha256_file, write_report
from .plotting import plot_checks, plot_classification
from .sweep import default_workers, summary_line
from . import ydq

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _workers(args) -> int:
    return args.workers if args.workers is not None else default_workers()


def _finish(report: dict, args, figure) -> List[Path]:
    paths = write_report(report, args.report)
    png = Path(args.report).with_suffix(".png")
    figure(png)
    return paths + [png]


def _echo(lines, quiet: bool):
    if not quiet:
        for line in lines:
            print(line)


# -- verify --------------------------------------------------------------------------------

def cmd_verify(args) -> int:
    s = load_structure(args.structure)
    if not s.finite:
        radius = args.window if args.window is not None else s.radius
        if radius is None or radius < 1:
            raise InputError(f"{s.name} has an infinite basis: --window must be at least 1 (got {radius})")
        s.radius = radius
    t0 = time.perf_counter()
    res = run_suite(s, workers=_workers(args), star=not args.no_star)
    seconds = time.perf_counter() - t0
    checks_out = [r.as_dict(args.timing) for r in res.reports]
    report = {
        "format": REPORT_FORMAT,
        "command": "verify",
        "inputs": {"structure": {"path": str(args.structure), "sha256": sha256_file(args.structure)}},
        "structure": s.name,
        "scalars": s.scalars,
        "window": s.window_label(),
        "verdict": res.verdict,
        "coassociative": res.coassociative,
        "headline": res.headline(),
        "summary": summary_line(res.reports),
        "antipode": res.antipode_table,
        "checks": checks_out,
    }
    if not s.finite:
        report["unit_probe"] = unit_probe(s)
        report["unit_probe"]["witnesses"] = [None if w is None else repr(w)
                                             for w in report["unit_probe"]["witnesses"]]
    if args.timing:
        report["timing"] = {"seconds": round(seconds, 3), "workers": _workers(args)}
    _finish(report, args, lambda p: plot_checks(checks_out, p, f"{s.name}: {res.headline()}"))
    lines = [r.line() for r in res.reports]
    lines.append(f"verdict: {res.headline()}")
    _echo(lines, args.quiet)
    if args.expect is not None:
        return EXIT_OK if res.verdict == args.expect else EXIT_MISMATCH
    return EXIT_OK if res.verdict != "no" else EXIT_MISMATCH


# -- classify ------------------------------------------------------------------------------

def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    try:
        c = classify(args.max_order, _workers(args))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    seconds = time.perf_counter() - t0
    report = {
        "format": REPORT_FORMAT,
        "command": "classify",
        "max_order": args.max_order,
        "counts": {str(k): v for k, v in c.counts().items()},
        "discrepancies": len(c.discrepancies),
        "coassociativity_discrepancies": len(c.coassociativity_discrepancies),
        "correspondence": "antipode identities hold exactly when the loop has the inverse property",
        "loops": c.rows,
        "checks": [_row_check(r) for r in c.rows],
    }
    if args.timing:
        report["timing"] = {"seconds": round(seconds, 3), "workers": _workers(args)}
    _finish(report, args, lambda p: plot_classification(c.rows, p, args.max_order))
    lines = []
    for n, row in c.counts().items():
        lines.append(f"order {n}: {row['loops']} loops, {row['groups']} groups, IP {row['inverse_property']}, "
                     f"antipode pass {row['antipode_pass']} / fail {row['antipode_fail']}")
    lines.append(f"IP vs antipode-suite discrepancies: {len(c.discrepancies)}")
    lines.append(f"associativity vs coassociativity discrepancies: {len(c.coassociativity_discrepancies)}")
    _echo(lines, args.quiet)
    return EXIT_OK if not c.discrepancies and not c.coassociativity_discrepancies else EXIT_MISMATCH


def _row_check(r: dict) -> dict:
    w = r["antipode_witness"]
    return {
        "name": f"L{r['order']}.{r['index']}: IP={r['inverse_property']} ⇔ antipode identities",
        "status": "FAIL" if r["ip_discrepancy"] else "pass",
        "checked": 1,
        "failures": int(r["ip_discrepancy"]),
        "window": f"order {r['order']}",
        "witness": None if w is None else w["tuple"],
        "lhs": "" if w is None else w["lhs"],
        "rhs": "" if w is None else w["rhs"],
        "detail": f"antipode identities {r['antipode_suite']}, verdict {r['verdict']}",
    }


# -- ydq -----------------------------------------------------------------------------------

def cmd_ydq(args) -> int:
    m, options, spath = load_instance(args.instance)
    s = m.structure
    S = build_antipode(s)
    reg = checks.check_regularity(s, S, workers=_workers(args))
    if reg.passed is not True:
        raise InputError(f"{s.name} is not regular ({reg.detail or 'regularity fails'}); "
                         "the functors need S⁻¹")
    transports = args.transports or options["transports"]
    bico = options["bicomodule"]
    other = None
    if bico is not None:
        side = "right" if m.coaction.side == "left" else "left"
        other = ydq.diagonal_coaction(s, side) if bico == "diagonal" else ydq.trivial_coaction(side)
    t0 = time.perf_counter()
    res = ydq.run_ydq(m, workers=_workers(args), transports=transports, bicomodule=other)
    seconds = time.perf_counter() - t0
    checks_out = [r.as_dict(args.timing) for r in res.reports]
    inputs = {"instance": {"path": str(args.instance), "sha256": sha256_file(args.instance)}}
    if spath is not None:
        inputs["structure"] = {"path": str(spath), "sha256": sha256_file(spath)}
    verdict = "pass" if res.passed else "fail"
    report = {
        "format": REPORT_FORMAT,
        "command": "ydq",
        "inputs": inputs,
        "structure": s.name,
        "instance": m.name,
        "variant": m.variant,
        "verdict": verdict,
        "summary": summary_line(res.reports),
        "checks": checks_out,
    }
    if args.timing:
        report["timing"] = {"seconds": round(seconds, 3), "workers": _workers(args)}
    _finish(report, args, lambda p: plot_checks(checks_out, p, f"{m.name} over {s.name} ({m.variant})"))
    lines = [r.line() for r in res.reports]
    lines.append(f"result: {verdict}")
    _echo(lines, args.quiet)
    expect = args.expect or "pass"
    return EXIT_OK if verdict == expect else EXIT_MISMATCH


# -- entry point ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mhcq", description="Exact verification of multiplier Hopf coquasigroups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--report", required=True, help="JSON report path; .tsv and .png are written alongside")
        sp.add_argument("--workers", type=int, default=None, help="worker processes (default: $MHCQ_WORKERS or 1)")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
        sp.add_argument("--quiet", action="store_true")

    v = sub.add_parser("verify", help="run the full suite on a structure file")
    v.add_argument("--structure", required=True)
    v.add_argument("--window", type=int, default=None, help="window radius for infinite bases")
    v.add_argument("--expect", choices=("regular", "generalized", "no"))
    v.add_argument("--no-star", action="store_true", help="skip the *-structure checks")
    common(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="classify function algebras of small loops")
    c.add_argument("--max-order", type=int, required=True)
    common(c)
    c.set_defaults(func=cmd_classify)

    y = sub.add_parser("ydq", help="Yetter-Drinfeld quasimodule checks and functor transports")
    y.add_argument("--instance", required=True)
    y.add_argument("--transports", choices=("auto", "always", "never"), default=None)
    y.add_argument("--expect", choices=("pass", "fail"))
    common(y)
    y.set_defaults(func=cmd_ydq)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.workers is not None and args.workers < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
