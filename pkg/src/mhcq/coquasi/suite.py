"""The full verification suite and the verdict derived from it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..exactalg import key_str
from ..sweep import Identity, VerificationReport, reevaluate
from . import checks
from .antipode import Antipode, AntipodeError, build_antipode
from .structure import CoquasiStructure

# groups whose success makes a generalized structure (kernels bijective,
# counit laws, colinear inverses on one coherent coproduct)
GENERALIZED_GROUPS = ("nondegeneracy", "coherence", "galois", "counit", "almost colinearity")
VERDICTS = ("regular", "generalized", "no")


@dataclass
class SuiteResult:
    structure: CoquasiStructure
    reports: List[VerificationReport]
    verdict: str
    coassociative: Optional[bool]
    antipode_table: Optional[Dict[str, str]] = None
    identities: Dict[str, Identity] = field(default_factory=dict, repr=False)

    def group(self, name: str) -> Optional[VerificationReport]:
        for r in self.reports:
            if r.name == name:
                return r
        return None

    def passed(self, name: str) -> Optional[bool]:
        r = self.group(name)
        return None if r is None else r.passed

    def headline(self) -> str:
        if self.verdict == "no":
            first = next((r for r in self.reports if r.passed is False), None)
            why = f" ({first.name} fails)" if first is not None else ""
            return f"multiplier Hopf coquasigroup: no{why}"
        kind = "regular" if self.verdict == "regular" else "generalized (not regular)"
        coassoc = {True: "coassociative (multiplier Hopf algebra)",
                   False: "NOT coassociative", None: "coassociativity not checked"}[self.coassociative]
        return f"{kind} multiplier Hopf coquasigroup, {coassoc}"

    def failing_leaves(self):
        for r in self.reports:
            for leaf in r.leaves():
                if leaf.passed is False:
                    yield leaf

    def reproduce(self, leaf: VerificationReport):
        """Re-evaluate a failing identity at its witness: ``(equal, lhs, rhs)``."""
        ident = self.identities.get(leaf.name)
        if ident is None or leaf.witness is None:
            return None
        return reevaluate(ident, leaf.witness)


def verdict_of(reports: List[VerificationReport]) -> str:
    """Pure function of the per-check results."""
    status = {r.name: r.passed for r in reports}
    if not all(status.get(g) is True for g in GENERALIZED_GROUPS):
        return "no"
    if status.get("regularity") is True:
        return "regular"
    return "generalized"


def run_suite(s: CoquasiStructure, radius: int | None = None, workers: int | None = None,
              star: bool = True, collapse: bool = True) -> SuiteResult:
    if radius is not None and not s.finite:
        s.radius = radius
    ctx = checks._Ctx(s, None, workers)
    S = build_antipode(s, radius)
    reports = [
        checks.check_nondegeneracy(ctx),
        checks.check_coherence(ctx),
        checks.check_galois(ctx),
        checks.check_counit(ctx),
        checks.check_counit_homomorphism(ctx),
        checks.check_almost_colinearity(ctx),
        checks.check_antipode_build(ctx, S),
        checks.check_antipode_identities(ctx, S),
        checks.check_antimultiplicativity(ctx, S),
        checks.check_anticomultiplicativity(ctx, S),
        checks.check_eps_S(ctx, S),
        checks.check_regularity(ctx, S),
        checks.check_coassociativity(ctx),
    ]
    if star and s.star is not None:
        reports.append(checks.check_star(ctx, S))
    if collapse:
        reports.append(checks.check_unital_collapse(ctx, S))
    coassoc = next(r.passed for r in reports if r.name == "coassociativity")
    table = antipode_table(s, S) if s.finite else None
    return SuiteResult(s, reports, verdict_of(reports), coassoc, table, dict(ctx.registry))


def antipode_table(s: CoquasiStructure, S: Antipode) -> Optional[Dict[str, str]]:
    out = {}
    for g in s.window():
        try:
            out[key_str(g)] = S.element(g).canonical()
        except AntipodeError:
            out[key_str(g)] = "undefined"
    return out


def antipode_suite_passes(s: CoquasiStructure, workers: int | None = None) -> tuple:
    """Only the antipode identities; returns ``(passed, report)``."""
    S = build_antipode(s)
    rep = checks.check_antipode_identities(s, S, workers=workers)
    return rep.passed, rep
