"""Exhaustive verification sweeps over window tuples.

An :class:`Identity` pairs a list of basis domains with an ``evaluate``
function returning both sides of a multilinear identity for one tuple.
:func:`run` checks every tuple of the product domain and reports the first
failing tuple in lexicographic order, so the result does not depend on how
the sweep is sharded across worker processes.
"""

from __future__ import annotations

import itertools
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence

from .exactalg import FinTensor, key_str, scalar_str

WORKERS_ENV = "MHCQ_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class VerificationReport:
    name: str
    passed: Optional[bool]  # None: not applicable
    checked: int = 0
    window: str = ""
    witness: Optional[tuple] = None
    lhs: str = ""
    rhs: str = ""
    failures: int = 0
    detail: str = ""
    seconds: float = 0.0
    parts: List["VerificationReport"] = field(default_factory=list)

    @property
    def status(self) -> str:
        return {True: "pass", False: "FAIL", None: "n/a"}[self.passed]

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "name": self.name,
            "status": self.status,
            "checked": self.checked,
            "failures": self.failures,
            "window": self.window,
            "witness": None if self.witness is None else key_str(tuple(self.witness)),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "detail": self.detail,
        }
        if timing:
            d["seconds"] = round(self.seconds, 4)
        if self.parts:
            d["parts"] = [p.as_dict(timing) for p in self.parts]
        return d

    def first_failure(self) -> Optional["VerificationReport"]:
        if not self.parts:
            return self if self.passed is False else None
        for p in self.parts:
            f = p.first_failure()
            if f is not None:
                return f
        return None

    def leaves(self):
        if not self.parts:
            yield self
        for p in self.parts:
            yield from p.leaves()

    def line(self) -> str:
        s = f"[{self.status}] {self.name} ({self.checked} tuples"
        s += f", window {self.window})" if self.window else ")"
        if self.passed is False and self.witness is not None:
            s += f" witness={key_str(tuple(self.witness))}"
        if self.detail:
            s += f" -- {self.detail}"
        return s


@dataclass
class Identity:
    name: str
    domains: List[Sequence[Any]]
    evaluate: Callable[..., tuple]
    window: str = ""
    detail: str = ""

    def sides(self, *tup):
        lhs, rhs = self.evaluate(*tup)
        return serialize(lhs), serialize(rhs)


def serialize(x) -> str:
    if isinstance(x, FinTensor):
        return x.canonical()
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(serialize(v) for v in x) + ")"
    if isinstance(x, (bool, str)) or x is None:
        return str(x)
    return scalar_str(x)


def _equal(lhs, rhs) -> bool:
    return lhs == rhs


def _evaluate(ev, tup):
    # an evaluation error (e.g. an undefined antipode value) counts as a failure
    try:
        return ev(*tup)
    except Exception as exc:  # noqa: BLE001
        return f"error: {type(exc).__name__}: {exc}", "defined"


def _scan(identity: Identity, first_range: range):
    """Scan tuples whose first component index lies in ``first_range``."""
    doms = identity.domains
    ev = identity.evaluate
    count = 0
    failures = 0
    witness = None
    rest = doms[1:]
    for i in first_range:
        head = doms[0][i]
        for tail in itertools.product(*rest):
            count += 1
            lhs, rhs = _evaluate(ev, (head,) + tail)
            if not _equal(lhs, rhs):
                failures += 1
                if witness is None:
                    witness = ((head,) + tail, serialize(lhs), serialize(rhs))
    return count, failures, witness


_ACTIVE: Optional[Identity] = None


def _shard(bounds):
    return _scan(_ACTIVE, range(*bounds))


def run(identity: Identity, workers: int | None = None) -> VerificationReport:
    global _ACTIVE
    workers = workers or default_workers()
    t0 = time.perf_counter()
    n0 = len(identity.domains[0]) if identity.domains else 0
    if not identity.domains:
        results = [(1, *_scalar_check(identity))]
    elif workers <= 1 or n0 < 2:
        results = [_scan(identity, range(n0))]
    else:
        chunks = _chunks(n0, workers)
        _ACTIVE = identity
        try:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(min(workers, len(chunks))) as pool:
                results = pool.map(_shard, chunks)
        finally:
            _ACTIVE = None
    count = sum(r[0] for r in results)
    failures = sum(r[1] for r in results)
    # shards are in index order, so the first witness is lexicographically first
    witness = next((r[2] for r in results if r[2] is not None), None)
    rep = VerificationReport(identity.name, failures == 0, count, identity.window,
                             failures=failures, detail=identity.detail)
    if witness is not None:
        rep.witness, rep.lhs, rep.rhs = witness
    rep.seconds = time.perf_counter() - t0
    return rep


def _scalar_check(identity):
    lhs, rhs = _evaluate(identity.evaluate, ())
    if _equal(lhs, rhs):
        return 0, None
    return 1, ((), serialize(lhs), serialize(rhs))


def _chunks(n: int, workers: int):
    # a few shards per worker keeps the pool busy when tuples have uneven cost
    pieces = min(n, workers * 4)
    step, extra = divmod(n, pieces)
    out, start = [], 0
    for k in range(pieces):
        stop = start + step + (1 if k < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def reevaluate(identity: Identity, witness: tuple):
    """Recompute both sides for one tuple; returns ``(equal, lhs, rhs)``."""
    lhs, rhs = _evaluate(identity.evaluate, tuple(witness))
    return _equal(lhs, rhs), serialize(lhs), serialize(rhs)


def combine(name: str, parts: Sequence[VerificationReport], window: str = "",
            detail: str = "") -> VerificationReport:
    """Group report: fails if any part fails, n/a if every part is n/a."""
    parts = list(parts)
    states = [p.passed for p in parts]
    if any(s is False for s in states):
        passed = False
    elif parts and all(s is None for s in states):
        passed = None
    else:
        passed = True
    rep = VerificationReport(name, passed, sum(p.checked for p in parts), window,
                             failures=sum(p.failures for p in parts), detail=detail,
                             seconds=sum(p.seconds for p in parts), parts=parts)
    first = rep.first_failure()
    if first is not None:
        rep.witness, rep.lhs, rep.rhs = first.witness, first.lhs, first.rhs
        rep.detail = rep.detail or f"first failure in {first.name}"
    return rep


def not_applicable(name: str, detail: str, window: str = "") -> VerificationReport:
    return VerificationReport(name, None, 0, window, detail=detail)


def summary_line(reports: Sequence[VerificationReport]) -> str:
    passed = sum(1 for r in reports if r.passed is True)
    failed = sum(1 for r in reports if r.passed is False)
    na = sum(1 for r in reports if r.passed is None)
    return f"{passed} passed, {failed} failed, {na} not applicable"
