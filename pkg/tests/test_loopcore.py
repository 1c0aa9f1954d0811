from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mhcq.loopcore import (
    KNOWN_LOOP_COUNTS,
    LoopTable,
    LoopTableError,
    SteinerError,
    canonical_form,
    cyclic_group,
    enumerate_loops,
    fano_triples,
    format_loop_table,
    parse_loop_table,
    predicates,
    product_with_integers,
    steiner_l10,
    steiner_loop,
    symmetric_group,
)

SMALL = [loop for n in range(1, 6) for loop in enumerate_loops(n)]


def brute(loop):
    """Direct predicate scan, written independently of loopcore."""
    E = range(loop.order)
    m = loop.mul
    e = loop.identity
    inv = {x: next(y for y in E if m(x, y) == e) for x in E}
    return {
        "associative": all(m(m(x, y), z) == m(x, m(y, z)) for x, y, z in itertools.product(E, E, E)),
        "commutative": all(m(x, y) == m(y, x) for x, y in itertools.product(E, E)),
        "inverse_property": all(m(inv[x], m(x, y)) == y and m(m(y, x), inv[x]) == y
                                for x, y in itertools.product(E, E)),
    }


def test_enumeration_matches_known_counts():
    for n in range(1, 7):
        assert sum(1 for _ in enumerate_loops(n)) == KNOWN_LOOP_COUNTS[n]


def test_enumeration_bound():
    with pytest.raises(ValueError):
        next(enumerate_loops(7))


@pytest.mark.parametrize("idx", range(len(SMALL)))
def test_predicates_agree_with_brute_force(idx):
    loop = SMALL[idx]
    p = predicates(loop)
    assert {"associative": p.associative, "commutative": p.commutative,
            "inverse_property": p.inverse_property} == brute(loop)


def test_orders_up_to_four_are_groups():
    assert all(predicates(L).associative for L in SMALL if L.order <= 4)


def test_order_five_has_exactly_one_group():
    five = [L for L in SMALL if L.order == 5]
    assert sum(bool(predicates(L).associative) for L in five) == 1


def test_l10_properties(l10):
    p = predicates(l10)
    assert l10.order == 10
    assert p.commutative and p.inverse_property
    assert p.associative is False and "associative" in p.witnesses
    # Moufang loops of order below 12 are groups, so L10 is not Moufang
    assert p.moufang is False
    assert all(l10.mul(x, x) == l10.identity for x in l10.elements())


def test_fano_steiner_loop_is_elementary_abelian():
    loop = steiner_loop(fano_triples())
    assert loop.order == 8
    p = predicates(loop)
    assert p.associative and p.commutative


def test_steiner_rejects_bad_systems():
    with pytest.raises(SteinerError):
        steiner_loop([(1, 2, 3), (1, 2, 4)])
    with pytest.raises(SteinerError):
        steiner_loop([(1, 2, 3), (1, 4, 5)])


def test_groups():
    s3 = symmetric_group(3)
    p = predicates(s3)
    assert p.associative and not p.commutative
    assert predicates(cyclic_group(4)).commutative


def test_latin_violation_rejected():
    with pytest.raises(LoopTableError):
        LoopTable.from_rows([[0, 1], [1, 1]])
    with pytest.raises(LoopTableError):
        LoopTable.from_rows([[1, 0], [0, 1]])


@given(st.sampled_from(SMALL))
def test_divisions(loop):
    for x, y in itertools.product(loop.elements(), repeat=2):
        assert loop.mul(x, loop.ldiv(x, y)) == y
        assert loop.mul(loop.rdiv(y, x), x) == y


@given(st.sampled_from(SMALL))
def test_text_roundtrip(loop):
    assert parse_loop_table(format_loop_table(loop)) == loop


@given(st.sampled_from([L for L in SMALL if L.order >= 3]), st.randoms(use_true_random=False))
def test_canonical_form_is_relabelling_invariant(loop, rnd):
    n = loop.order
    rest = list(range(1, n))
    rnd.shuffle(rest)
    p = [0] + rest
    pinv = [p.index(i) for i in range(n)]
    rows = [[p[loop.mul(pinv[i], pinv[j])] for j in range(n)] for i in range(n)]
    assert canonical_form(LoopTable.from_rows(rows)) == canonical_form(loop)


def test_parse_errors():
    with pytest.raises(LoopTableError):
        parse_loop_table("2\n0\n0 1\n")
    with pytest.raises(LoopTableError):
        parse_loop_table("2\n0\n0 x\n1 0\n")


def test_product_with_integers(l10):
    P = product_with_integers(l10)
    x, y = (3, 2), (5, -7)
    assert P.mul(x, y) == (l10.mul(3, 5), -5)
    assert P.mul(x, P.ldiv(x, y)) == y and P.mul(P.rdiv(y, x), x) == y
    assert len(P.window(3)) == 70
    p = predicates(P, radius=1)
    assert p.associative is False and p.commutative is None
