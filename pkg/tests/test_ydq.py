from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhcq import ydq
from mhcq.coquasi import build_antipode, function_algebra_structure
from mhcq.exactalg import FinTensor, delta
from mhcq.io import load_instance
from mhcq.loopcore import cyclic_group, enumerate_loops, steiner_l10, symmetric_group

from conftest import DATA
from oracles import FunctionAlgebraOracle, holds, ll_identities, two_sided

# inverse-property loops, so the oracle's S(δ_g) = δ_{g⁻¹} is the antipode
LOOPS = {
    "Z3": cyclic_group(3),
    "V4": list(enumerate_loops(4))[0],
    "S3": symmetric_group(3),
    "L10": steiner_l10(),
}
STRUCTS = {k: function_algebra_structure(v, name=f"k({k})") for k, v in LOOPS.items()}


def _statuses(report):
    return {p.name.split(" ")[0]: p.passed for p in report.parts if "cross-check" not in p.name}


@pytest.mark.parametrize("loop", list(LOOPS))
@pytest.mark.parametrize("module", ["regular", "trivial"])
def test_ll_family_agrees_with_oracle(loop, module):
    s = STRUCTS[loop]
    m = ydq.make_instance(s, "LL", module, "diagonal")
    lib = _statuses(ydq.check_ydq(m, workers=1))
    O = FunctionAlgebraOracle(LOOPS[loop])
    act = O.regular_action if module == "regular" else O.trivial_action
    ids = ll_identities(O, act, O.delta_coaction)
    E = O.els
    oracle = {
        "LL-1": holds(ids["LL-1"], E, E, E),
        "LL-2": holds(ids["LL-2"], E, E, E),
        "LL-3": holds(ids["LL-3"], E, E, E, E),
        "LL-4": holds(ids["LL-4"], E, E, E),
    }
    assert lib == oracle


@pytest.mark.parametrize("loop", list(LOOPS))
def test_quasicomodule_laws_agree_with_oracle(loop):
    s = STRUCTS[loop]
    rep = ydq.check_quasicomodule(ydq.diagonal_instance(s), workers=1)
    O = FunctionAlgebraOracle(LOOPS[loop])
    ids = ll_identities(O, O.regular_action, O.delta_coaction)
    assert holds(ids["counit"], O.els, O.els) and holds(ids["coassoc"], O.els, O.els)
    assert rep.passed is True


@pytest.mark.parametrize("loop", list(LOOPS))
def test_two_sided_condition_agrees_with_oracle(loop):
    s = STRUCTS[loop]
    m = ydq.diagonal_instance(s)
    res = ydq.run_ydq(m, workers=1, transports="never", bicomodule=ydq.diagonal_coaction(s, "right"))
    lib = next(r for r in res.reports if r.name == "two-sided quasicomodule compatibility").passed
    O = FunctionAlgebraOracle(LOOPS[loop])
    E = O.els
    assert lib == holds(two_sided(O, O.delta_coaction, O.right_delta_coaction), E, E, E)


def test_cross_check_is_consistent():
    for s in STRUCTS.values():
        rep = ydq.check_ydq(ydq.diagonal_instance(s), workers=1)
        cross = next(p for p in rep.parts if "cross-check" in p.name)
        assert cross.passed is True


@pytest.mark.parametrize("path", ["l10_counit_action.json", "s3_group_adjoint.json", "z2_trivial.json"])
def test_positive_controls_pass_everything(path):
    m, options, _ = load_instance(DATA / "instances" / path)
    s = m.structure
    other = None
    if options["bicomodule"] == "diagonal":
        other = ydq.diagonal_coaction(s, "right")
    elif options["bicomodule"] == "trivial":
        other = ydq.trivial_coaction("right")
    res = ydq.run_ydq(m, workers=1, transports="always", bicomodule=other)
    assert [r.name for r in res.reports if r.passed is not True] == []
    assert any(r.name.startswith("transport LR→LL") for r in res.reports)


def test_negative_control_skips_transports():
    m = ydq.diagonal_instance(STRUCTS["S3"])
    res = ydq.run_ydq(m, workers=1)
    comp = next(r for r in res.reports if r.name == "LL compatibility")
    assert comp.passed is False and comp.witness is not None
    skipped = [r for r in res.reports if r.passed is None]
    assert skipped and "skipped" in skipped[0].detail


def test_round_trip_is_exact_even_for_failing_objects():
    for s in STRUCTS.values():
        final, rep = ydq.round_trip(ydq.diagonal_instance(s))
        assert rep.passed and final.variant == "LL"


def test_direct_functor_matches_composite():
    s = STRUCTS["S3"]
    m = ydq.make_instance(s, "LL", "trivial", "diagonal")
    S = build_antipode(s)
    direct = ydq.apply_functor(ydq.functor("LL", "LR"), m, S)
    via = m
    for a, b in zip(ydq.ROUND_TRIP[:3], ydq.ROUND_TRIP[1:4]):
        via = ydq.apply_functor(ydq.functor(a, b), via, S)
    assert via.variant == direct.variant == "LR"
    assert ydq.kernel_tables(via) == ydq.kernel_tables(direct)


def test_functor_source_checked():
    m = ydq.diagonal_instance(STRUCTS["Z3"])
    with pytest.raises(ydq.YDQError):
        ydq.apply_functor(ydq.functor("RL", "RR"), m)
    with pytest.raises(ydq.YDQError):
        ydq.functor("LL", "RR")


def test_side_mismatch_rejected():
    s = STRUCTS["Z3"]
    with pytest.raises(ydq.YDQError):
        ydq.YDQuasimodule("LL", s, ydq.regular_module(s, "right"), ydq.diagonal_coaction(s, "left"))


def test_inclusion_is_a_morphism_and_transports():
    m = ydq.make_instance(STRUCTS["S3"], "LL", "trivial", "diagonal")
    total = ydq.direct_sum(m, m)
    assert ydq.check_morphism(ydq.inclusion(m, 1), m, total, workers=1).passed
    for src, tgt in zip(ydq.ROUND_TRIP, ydq.ROUND_TRIP[1:]):
        rep = ydq.transport_morphism(ydq.functor(src, tgt), m if src == "LL" else _at(m, src))
        assert rep.passed, (src, tgt)


def _at(m, variant):
    S = build_antipode(m.structure)
    cur = m
    for a, b in zip(ydq.ROUND_TRIP, ydq.ROUND_TRIP[1:]):
        if cur.variant == variant:
            break
        cur = ydq.apply_functor(ydq.functor(a, b), cur, S)
    return cur


def test_non_morphism_detected():
    s = STRUCTS["S3"]
    m = ydq.make_instance(s, "LL", "trivial", "diagonal")
    total = ydq.direct_sum(m, m)
    basis = m.module.basis
    shifted = {v: delta((0, basis[(i + 1) % len(basis)])) for i, v in enumerate(basis)}
    rep = ydq.check_morphism(shifted, m, total, workers=1)
    assert rep.passed is False and rep.witness is not None


@settings(max_examples=15)
@given(st.fractions(min_value=-5, max_value=5).filter(bool))
def test_scalar_multiples_of_identity_are_morphisms(c):
    m = ydq.make_instance(STRUCTS["Z3"], "LL", "trivial", "diagonal")
    f = {v: delta(v, c) for v in m.module.basis}
    assert ydq.check_morphism(f, m, m, workers=1).passed


@settings(max_examples=20)
@given(st.dictionaries(st.integers(0, 5), st.integers(-3, 3), min_size=1, max_size=3),
       st.dictionaries(st.integers(0, 5), st.integers(-3, 3), min_size=1, max_size=3))
def test_damped_coaction_is_bilinear(x, y):
    s = STRUCTS["S3"]
    co = ydq.diagonal_coaction(s, "left")
    X = FinTensor({(k,): c for k, c in x.items()}, 1)
    Y = FinTensor({(k,): c for k, c in y.items()}, 1)
    whole = X.tensor(Y).apply(0, 2, co.rho.at, 2)
    pieces = FinTensor.zero(2)
    for (a,), c in X.terms.items():
        for (v,), d in Y.terms.items():
            pieces = pieces + co.rho.at(a, v).scale(c * d)
    assert whole == pieces
