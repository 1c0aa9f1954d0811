from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mhcq.coquasi import (
    StructureError,
    build_antipode,
    build_cop,
    function_algebra_structure,
    group_algebra_structure,
    run_suite,
    structure_from_coproduct,
    verdict_of,
    with_counit,
)
from mhcq.coquasi.suite import GENERALIZED_GROUPS
from mhcq.exactalg import FinTensor, FunctionAlgebra, delta, zero_product_algebra
from mhcq.loopcore import cyclic_group, enumerate_loops, predicates
from mhcq.sweep import Identity, VerificationReport, combine, run

from oracles import FunctionAlgebraOracle

LOOPS = [loop for n in range(1, 6) for loop in enumerate_loops(n)]


def _honest(O, a, b, which):
    """Products of Δ with basis elements written straight from the loop table."""
    out = {}
    for x, y in O.coproduct(a if which in ("T1", "T4") else b):
        if which == "T1" and y == b:        # Δ(a)(1⊗b)
            out[(x, y)] = 1
        elif which == "T2" and x == a:      # (a⊗1)Δ(b)
            out[(x, y)] = 1
        elif which == "T3" and y == a:      # (1⊗a)Δ(b)
            out[(x, y)] = 1
        elif which == "T4" and x == b:      # Δ(a)(b⊗1)
            out[(x, y)] = 1
    return FinTensor(out, 2)


@pytest.mark.parametrize("idx", range(len(LOOPS)))
def test_function_algebra_kernels_match_oracle(idx):
    loop = LOOPS[idx]
    s = function_algebra_structure(loop)
    O = FunctionAlgebraOracle(loop)
    for a, b in itertools.product(loop.elements(), repeat=2):
        for name in ("T1", "T2", "T3", "T4"):
            assert getattr(s, name).at(a, b) == _honest(O, a, b, name), (name, a, b)
        for name in ("T1", "T2", "T3", "T4"):
            k, kinv = getattr(s, name), getattr(s, name + "inv")
            assert kinv(k.at(a, b)) == FinTensor.basis(a, b)


def test_group_algebra_kernels():
    G = enumerate_loops(4).__next__()
    s = group_algebra_structure(G)
    for g, h in itertools.product(G.elements(), repeat=2):
        gh = G.mul(g, h)
        assert s.T1.at(g, h) == FinTensor.basis(g, gh)     # (g⊗g)(1⊗h)
        assert s.T2.at(g, h) == FinTensor.basis(gh, h)     # (g⊗1)(h⊗h)
        assert s.T3.at(g, h) == FinTensor.basis(h, gh)
        assert s.T4.at(g, h) == FinTensor.basis(gh, g)


def test_antipode_of_ip_loops(l10, kl10):
    S = build_antipode(kl10)
    for g in l10.elements():
        assert S.element(g) == delta(l10.right_inverse(g))


def test_group_algebra_antipode(gs3):
    S = build_antipode(gs3)
    G = gs3.loop
    for g in G.elements():
        assert S.element(g) == delta(G.right_inverse(g))


def test_cop_structure_of_group_algebra_flips(gs3):
    cop = build_cop(gs3)
    G = gs3.loop
    for g, h in itertools.product(G.elements(), repeat=2):
        # Δ^cop = Δ for k[G], so the opposite kernels agree
        assert cop.T1.at(g, h) == gs3.T1.at(g, h)


def test_explicit_structure_from_oracle_coproduct():
    loop = cyclic_group(3)
    O = FunctionAlgebraOracle(loop)
    cop = {g: FinTensor({xy: 1 for xy in O.coproduct(g)}, 2) for g in loop.elements()}
    s = structure_from_coproduct(FunctionAlgebra(loop), cop, name="k(Z3) explicit")
    assert s.info["counit"] == "solved"
    assert [s.counit(g) for g in loop.elements()] == [1, 0, 0]
    res = run_suite(s)
    assert res.verdict == "regular" and res.coassociative is True


def test_explicit_structure_without_counit_solution():
    A = FunctionAlgebra(cyclic_group(2))
    cop = {0: FinTensor.basis(0, 0), 1: FinTensor.basis(1, 1)}
    with pytest.raises(StructureError):
        structure_from_coproduct(A, cop)


# -- suite and verdict --------------------------------------------------------------

@pytest.mark.parametrize("fixture", ["gz2", "gs3", "ks3"])
def test_small_structures_pass(fixture, request):
    res = run_suite(request.getfixturevalue(fixture))
    assert [r.name for r in res.reports if r.passed is not True] == []
    assert res.verdict == "regular" and res.coassociative is True


def test_wrong_counit_is_caught(ks3):
    bad = with_counit(ks3, {0: 0, 1: 1})
    res = run_suite(bad, star=False)
    assert res.passed("counit") is False
    assert res.verdict == "no"
    leaf = res.group("counit").first_failure()
    assert res.reproduce(leaf) == (False, leaf.lhs, leaf.rhs)


def test_zero_product_algebra_is_degenerate():
    from mhcq.exactalg import check_nondegeneracy

    A = zero_product_algebra(2)
    rep = check_nondegeneracy(A, A.basis())
    assert rep.passed is False and rep.witness == 0


def test_non_ip_loop_fails_antipode_identities():
    for loop in enumerate_loops(5):
        if predicates(loop).inverse_property:
            continue
        res = run_suite(function_algebra_structure(loop, star=False), star=False)
        assert res.passed("antipode identities") is False
        assert res.verdict == "no"
        break


statuses = st.sampled_from([True, False, None])
GROUPS = list(GENERALIZED_GROUPS) + ["regularity", "coassociativity", "star"]


@given(st.fixed_dictionaries({g: statuses for g in GROUPS}))
def test_verdict_is_a_pure_function_of_statuses(status):
    reports = [VerificationReport(name, ok) for name, ok in status.items()]
    if not all(status[g] is True for g in GENERALIZED_GROUPS):
        expected = "no"
    elif status["regularity"] is True:
        expected = "regular"
    else:
        expected = "generalized"
    assert verdict_of(reports) == expected
    assert verdict_of(list(reversed(reports))) == expected


# -- sweep -----------------------------------------------------------------------------

def _identity():
    def ev(x, y, z):
        if x == 1 and y == 1:
            raise ZeroDivisionError("boom")
        return Fraction((x * y + z) % 5), Fraction((x * y + z) % 7)

    return Identity("toy", [list(range(6)), list(range(4)), list(range(3))], ev, "toy window")


@pytest.mark.parametrize("workers", [1, 2, 3, 5])
def test_sweep_result_independent_of_workers(workers):
    ref = run(_identity(), 1).as_dict()
    assert run(_identity(), workers).as_dict() == ref


def test_sweep_reports_first_failure_lexicographically():
    rep = run(_identity(), 1)
    fails = [t for t in itertools.product(range(6), range(4), range(3))
             if (t[0] == 1 and t[1] == 1) or (t[0] * t[1] + t[2]) % 5 != (t[0] * t[1] + t[2]) % 7]
    assert rep.witness == fails[0]
    assert rep.failures == len(fails)
    assert rep.checked == 72


def test_evaluation_error_counts_as_failure():
    rep = run(Identity("err", [[0]], lambda x: 1 / x), 1)
    assert rep.passed is False and rep.lhs.startswith("error: ZeroDivisionError")


def test_combine():
    a, b = VerificationReport("a", True, 3), VerificationReport("b", False, 2, witness=(1,), lhs="x", rhs="y")
    c = combine("g", [a, b])
    assert c.passed is False and c.checked == 5 and c.witness == (1,) and c.first_failure() is b
    assert combine("n", [VerificationReport("n1", None)]).passed is None
