"""Classification campaign: function algebras of all small loops.

For every isomorphism class of loops of order ≤ ``max_order`` the full suite
runs on k(L), and the outcome is tabulated against the loop predicates.  Two
correspondences are expected and any exception to them is a finding:

* the antipode identities hold exactly when L has the inverse property,
* Δ is coassociative exactly when L is associative.
"""

from __future__ import annotations

import multiprocessing as mp
from dataclasses import dataclass
from typing import Dict, List, Optional

from .coquasi import function_algebra_structure, run_suite
from .exactalg import key_str
from .loopcore import KNOWN_LOOP_COUNTS, MAX_ENUMERATION_ORDER, enumerate_loops, format_loop_table, predicates
from .sweep import default_workers


@dataclass
class Classification:
    max_order: int
    rows: List[dict]

    @property
    def discrepancies(self) -> List[dict]:
        return [r for r in self.rows if r["ip_discrepancy"]]

    @property
    def coassociativity_discrepancies(self) -> List[dict]:
        return [r for r in self.rows if r["assoc_discrepancy"]]

    def counts(self) -> Dict[int, dict]:
        out = {}
        for n in range(1, self.max_order + 1):
            rows = [r for r in self.rows if r["order"] == n]
            out[n] = {
                "loops": len(rows),
                "groups": sum(r["associative"] for r in rows),
                "inverse_property": sum(r["inverse_property"] for r in rows),
                "antipode_pass": sum(r["antipode_suite"] == "pass" for r in rows),
                "antipode_fail": sum(r["antipode_suite"] == "FAIL" for r in rows),
                "verdicts": {v: sum(r["verdict"] == v for r in rows) for v in ("regular", "generalized", "no")},
                "ip_discrepancies": sum(r["ip_discrepancy"] for r in rows),
            }
        return out


def _classify_one(item) -> dict:
    order, index, loop = item
    pred = predicates(loop)
    s = function_algebra_structure(loop, name=f"k(L{order}.{index})", star=False)
    res = run_suite(s, workers=1, star=False)
    anti = res.group("antipode identities")
    witness = None
    if anti.passed is False:
        leaf = anti.first_failure()
        witness = {"check": leaf.name, "tuple": key_str(tuple(leaf.witness)) if leaf.witness else None,
                   "lhs": leaf.lhs, "rhs": leaf.rhs}
    coassoc = res.coassociative
    return {
        "order": order,
        "index": index,
        "table": format_loop_table(loop).split("\n")[2:-1],
        "associative": bool(pred.associative),
        "commutative": bool(pred.commutative),
        "inverse_property": bool(pred.inverse_property),
        "moufang": bool(pred.moufang),
        "antipode_suite": anti.status,
        "verdict": res.verdict,
        "coassociative": coassoc,
        "antipode_witness": witness,
        "ip_discrepancy": bool(pred.inverse_property) != (anti.passed is True),
        "assoc_discrepancy": bool(pred.associative) != (coassoc is True),
    }


def classify(max_order: int, workers: Optional[int] = None) -> Classification:
    if not 1 <= max_order <= MAX_ENUMERATION_ORDER:
        raise ValueError(f"max order must lie in 1..{MAX_ENUMERATION_ORDER}")
    items = [(n, i, loop) for n in range(1, max_order + 1) for i, loop in enumerate(enumerate_loops(n))]
    for n in range(1, max_order + 1):
        found = sum(1 for it in items if it[0] == n)
        if found != KNOWN_LOOP_COUNTS[n]:
            raise RuntimeError(f"enumeration found {found} loops of order {n}, expected {KNOWN_LOOP_COUNTS[n]}")
    workers = default_workers() if workers is None else workers
    if workers > 1:
        with mp.get_context("fork").Pool(workers) as pool:
            rows = pool.map(_classify_one, items, chunksize=4)
    else:
        rows = [_classify_one(it) for it in items]
    return Classification(max_order, rows)
