from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mhcq.coquasi import run_suite
from mhcq.exactalg import FinTensor
from mhcq.io import InputError, dump_vector, load_instance, load_structure, parse_vector, resolve_loop
from mhcq.loopcore import enumerate_loops, steiner_l10

from conftest import DATA

keys = st.one_of(st.integers(0, 5), st.tuples(st.integers(0, 3), st.integers(-2, 2)))


@given(st.dictionaries(st.tuples(keys, keys), st.fractions(max_denominator=9).filter(bool), max_size=5))
def test_vector_json_roundtrip(terms):
    t = FinTensor(terms, 2)
    assert parse_vector(dump_vector(t), 2) == t


def test_loop_sources():
    assert resolve_loop("steiner:ag23") == steiner_l10()
    assert resolve_loop("enum:5:3") == list(enumerate_loops(5))[3]
    assert resolve_loop("group:S3").order == 6
    kind, inner = resolve_loop("loopxz:steiner:ag23")
    assert kind == "loopxz" and inner.order == 10
    assert resolve_loop("table:l10.loop", DATA / "loops").table == steiner_l10().table
    for bad in ("group:X4", "enum:5:99", "nothing", "steiner:missing.sts"):
        with pytest.raises(InputError):
            resolve_loop(bad, DATA / "loops")


def test_explicit_structure_from_json():
    # k(Z2) as functions: δ_0, δ_1 idempotents, Δ(δ_g) = Σ_{x+y=g} δ_x⊗δ_y
    data = {
        "algebra": "explicit", "name": "k(Z2) explicit", "basis": [0, 1],
        "products": [[0, 0, [[0, "1"]]], [1, 1, [[1, "1"]]]],
        "coproduct": [[0, [[[0, 0], "1"], [[1, 1], "1"]]], [1, [[[0, 1], "1"], [[1, 0], "1"]]]],
        "star": [[0, [[0, "1"]]], [1, [[1, "1"]]]],
    }
    s = load_structure(data)
    res = run_suite(s)
    assert res.verdict == "regular" and res.coassociative is True
    assert s.info["counit"] == "solved"


def test_explicit_structure_needs_coproduct():
    with pytest.raises(InputError):
        load_structure({"algebra": "explicit", "basis": [0], "products": [[0, 0, [[0, "1"]]]]})


def test_every_shipped_file_loads():
    for path in sorted((DATA / "structures").glob("*.json")):
        assert load_structure(path).name
    for path in sorted((DATA / "instances").glob("*.json")):
        m, options, _ = load_instance(path)
        assert m.variant == "LL" and options["transports"] in ("auto", "always", "never")
