"""Acceptance criteria 1-7, one test each.

Every test prints one ``criterion N: PASS|FAIL`` line (plus sub-lines) so the
outcome is visible with ``pytest -s`` and in the captured output on failure.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

import pytest

from mhcq import ydq
from mhcq.classify import classify
from mhcq.cli import main
from mhcq.coquasi import build_antipode, checks, run_suite
from mhcq.exactalg import GaussianRational, delta
from mhcq.io import load_structure
from mhcq.sweep import reevaluate

DATA = Path(__file__).resolve().parent.parent / "data"
STRUCT = DATA / "structures"


def _verdict_line(n: int, ok: bool, why: str = "") -> None:
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f" ({why})" if why else ""))


def _sub(label: str, ok: bool) -> bool:
    print(f"    [{'ok' if ok else 'FAIL'}] {label}")
    return ok


def _verify(path: Path, out: Path, *extra: str) -> tuple:
    t0 = time.perf_counter()
    code = main(["verify", "--structure", str(path), "--report", str(out), "--quiet", *extra])
    return code, json.loads(out.read_text()), time.perf_counter() - t0


def test_criterion_1_small_structures(tmp_path):
    oks = []
    for fname in ("z2_group.json", "s3_group.json", "s3_functions.json"):
        code, rep, secs = _verify(STRUCT / fname, tmp_path / (fname + ".out.json"))
        failing = [c["name"] for c in rep["checks"] if c["status"] != "pass"]
        ok = _sub(f"{rep['structure']}: exit {code}, {rep['summary']}, {secs:.2f}s", code == 0 and not failing)
        ok &= _sub(f"{rep['structure']}: regular and coassociative",
                   rep["verdict"] == "regular" and rep["coassociative"] is True)
        ok &= _sub(f"{rep['structure']}: under 5 s", secs < 5)
        oks.append(ok)
    _verdict_line(1, all(oks))
    assert all(oks)


def test_criterion_2_l10(tmp_path):
    code, rep, secs = _verify(STRUCT / "l10.json", tmp_path / "l10.json")
    by_name = {c["name"]: c for c in rep["checks"]}
    others = [c for c in rep["checks"] if c["name"] != "coassociativity"]
    ok = _sub("all coquasigroup checks pass", all(c["status"] == "pass" for c in others))
    ok &= _sub("S = id on the basis", all(v == f"({k})=1/1" for k, v in rep["antipode"].items()))
    s2 = [leaf for leaf in by_name["regularity"]["parts"] if leaf["name"].startswith("S^cop")]
    s = load_structure(STRUCT / "l10.json")
    S = build_antipode(s)
    s_squared = all(S.element(S.element(g)) == delta(g) for g in s.window())
    ok &= _sub("S² = id", s_squared and all(leaf["status"] == "pass" for leaf in s2))
    ok &= _sub("verdict regular", rep["verdict"] == "regular")
    coassoc = by_name["coassociativity"]
    ok &= _sub(f"coassociativity fails with witness {coassoc['witness']}",
               coassoc["status"] == "FAIL" and coassoc["witness"] is not None)
    res = run_suite(s)
    leaf = res.group("coassociativity").first_failure()
    again = res.reproduce(leaf)
    ok &= _sub("witness reproduces", again == (False, leaf.lhs, leaf.rhs) and coassoc["lhs"] == leaf.lhs)
    ok &= _sub(f"exit {code}, {secs:.2f}s under 10 s", code == 0 and secs < 10)
    _verdict_line(2, ok)
    assert ok


def test_criterion_3_l10_times_z(tmp_path):
    code, rep, secs = _verify(STRUCT / "l10xz.json", tmp_path / "l10xz.json", "--window", "3")
    others = [c for c in rep["checks"] if c["name"] != "coassociativity"]
    ok = _sub(f"window {rep['window']}: all checks pass", all(c["status"] == "pass" for c in others))
    probe = rep["unit_probe"]
    ok &= _sub(f"no unit (local unit supports {probe.get('support_growth')})",
               probe["unit"] is False and probe["confirmed"] is True
               and probe["support_growth"] == sorted(set(probe["support_growth"])))
    ok &= _sub(f"exit {code}, {secs:.1f}s under 60 s", code == 0 and secs < 60)
    _verdict_line(3, ok)
    assert ok


def test_criterion_4_classification():
    c = classify(6, workers=1)
    ok = _sub(f"IP vs antipode discrepancies: {len(c.discrepancies)}", not c.discrepancies)
    small = [r for r in c.rows if r["order"] <= 4]
    ok &= _sub(f"all {len(small)} loops of order ≤ 4 pass",
               all(r["antipode_suite"] == "pass" and r["verdict"] == "regular" for r in small))
    five = [r for r in c.rows if r["order"] == 5 and r["antipode_suite"] == "FAIL"]
    ok &= _sub(f"{len(five)} order-5 loops fail, each with a witness",
               bool(five) and all(r["antipode_witness"] and r["antipode_witness"]["tuple"] for r in five))
    _verdict_line(4, ok)
    assert ok


def _star_leaves(s):
    res = run_suite(s)
    star = res.group("star")
    return {leaf.name: leaf for leaf in star.leaves()}


@pytest.mark.parametrize("fname", ["l10_gaussian.json", "s3_group_gaussian.json"])
def test_criterion_5_gaussian_star(fname):
    s = load_structure(STRUCT / fname)
    assert s.scalars == "gaussian-rationals"
    leaves = _star_leaves(s)
    names = ["ε(a*) = conj ε(a) on basis", "ε(a*) = conj ε(a) on random combinations",
             "S(S(a)*)* = a on basis", "S(S(a)*)* = a on random combinations"]
    ok = True
    for n in names:
        leaf = leaves.get(n)
        ok &= _sub(f"{s.name}: {n} ({leaf.checked if leaf else 0} cases)", leaf is not None and leaf.passed is True)
    randoms = [leaves[n].checked for n in names if "random" in n and n in leaves]
    ok &= _sub("100 random combinations each", randoms == [100, 100])
    combos = checks.random_combinations(s.window(), 100, True)
    ok &= _sub("combinations carry non-real Gaussian coefficients",
               any(isinstance(c, GaussianRational) and c.im != 0 for x in combos for _, c in x.terms.items()))
    _verdict_line(5, ok, s.name)
    assert ok


def test_criterion_6_ydq_diagonal_l10():
    s = load_structure(STRUCT / "l10.json")
    m = ydq.diagonal_instance(s)
    res = ydq.run_ydq(m, transports="always", bicomodule=ydq.diagonal_coaction(s, "right"))
    rep = {r.name: r for r in res.reports}
    ll = {p.name.split(" ")[0]: p for p in rep["LL compatibility"].parts if "cross-check" not in p.name}
    cross = next(p for p in rep["LL compatibility"].parts if "cross-check" in p.name)
    ok = True
    ok &= _sub("left quasicomodule laws", rep["left quasicomodule"].passed is True)
    ok &= _sub("right quasicomodule laws", rep["right quasicomodule"].passed is True)
    for label in ("LL-1", "LL-2", "LL-3", "LL-4"):
        p = ll[label]
        w = "" if p.passed else f" witness {p.witness}"
        ok &= _sub(f"{label} {p.status}{w}", p.passed is True)
    ok &= _sub(f"LL-1 ⇔ LL-4 cross-check ({cross.detail})", cross.passed is True)
    ok &= _sub("two-sided condition", rep["two-sided quasicomodule compatibility"].passed is True)
    for name in [n for n in rep if n.startswith("transport ")]:
        ok &= _sub(name, rep[name].passed is True)
    rt = [r for n, r in rep.items() if n.startswith("round trip")]
    ok &= _sub("round trip exact", len(rt) == 1 and rt[0].passed is True)

    neg = ydq.diagonal_instance(load_structure(STRUCT / "s3_functions.json"))
    nres = ydq.run_ydq(neg, transports="never")
    ncomp = next(r for r in nres.reports if r.name == "LL compatibility")
    ok &= _sub(f"negative control k(S3) fails LL with witness {ncomp.witness}",
               ncomp.passed is False and ncomp.witness is not None)
    _verdict_line(6, ok)
    assert ok


def _failing_leaves(reports):
    for r in reports:
        for leaf in r.leaves():
            if leaf.passed is False and leaf.witness is not None:
                yield leaf


def test_criterion_7_witness_fidelity(tmp_path):
    ok = True
    for fname in ("l10.json", "l5_non_ip.json"):
        res = run_suite(load_structure(STRUCT / fname))
        leaves = list(res.failing_leaves())
        same = all(res.reproduce(leaf) == (False, leaf.lhs, leaf.rhs) for leaf in leaves if leaf.witness)
        ok &= _sub(f"{fname}: {len(leaves)} failing witnesses re-evaluate byte-for-byte", bool(leaves) and same)

    s = load_structure(STRUCT / "l10.json")
    yres = ydq.run_ydq(ydq.diagonal_instance(s), transports="always",
                       bicomodule=ydq.diagonal_coaction(s, "right"))
    leaves = [leaf for leaf in _failing_leaves(yres.reports) if leaf.name in yres.registry]
    same = all(reevaluate(yres.registry[leaf.name], leaf.witness) == (False, leaf.lhs, leaf.rhs) for leaf in leaves)
    ok &= _sub(f"YDQ diagonal k(L10): {len(leaves)} failing witnesses re-evaluate byte-for-byte",
               bool(leaves) and same)

    runs = [
        ["verify", "--structure", str(STRUCT / "l10.json")],
        ["verify", "--structure", str(STRUCT / "l5_non_ip.json")],
        ["ydq", "--instance", str(DATA / "instances" / "l10_diagonal.json"), "--transports", "always"],
        ["classify", "--max-order", "5"],
    ]
    for argv in runs:
        outputs = []
        for w in (1, 4, 8):
            out = tmp_path / f"{argv[0]}-{len(outputs)}-w{w}.json"
            main(argv + ["--report", str(out), "--workers", str(w), "--quiet"])
            outputs.append(out.read_bytes() + out.with_suffix(".tsv").read_bytes())
        ok &= _sub(f"{' '.join(argv[:2])} {Path(argv[2]).name if len(argv) > 2 else ''}: "
                   "JSON and TSV identical for 1, 4, 8 workers", len(set(outputs)) == 1)
    _verdict_line(7, ok)
    assert ok
