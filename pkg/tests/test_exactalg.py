from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mhcq.exactalg import (
    Echelon,
    FinTensor,
    GaussianRational,
    conj,
    delta,
    gaussian,
    invert_on_basis,
    key_str,
    parse_scalar,
    scalar_str,
)

fractions = st.fractions(min_value=-999, max_value=999, max_denominator=50)
gaussians = st.builds(GaussianRational, fractions, fractions)
scalars = st.one_of(fractions, gaussians)
keys = st.integers(0, 4)


def tensors(legs=2):
    return st.dictionaries(st.tuples(*[keys] * legs), fractions, max_size=6).map(lambda d: FinTensor(d, legs))


# -- scalars ------------------------------------------------------------------

@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if x:
        assert (y / x) * x == y


@given(gaussians, gaussians)
def test_conjugation_is_a_field_automorphism(x, y):
    assert conj(x * y) == conj(x) * conj(y)
    assert conj(x + y) == conj(x) + conj(y)
    assert conj(conj(x)) == x


def test_i_squared():
    i = gaussian(0, 1)
    assert i * i == -1
    assert gaussian(3, 0) == 3 and isinstance(gaussian(3, 0), (int, Fraction))


@given(scalars)
def test_scalar_text_roundtrip(x):
    assert parse_scalar(scalar_str(x)) == x


def test_scalar_str_is_canonical():
    assert scalar_str(Fraction(2, 4)) == scalar_str(Fraction(1, 2))
    assert scalar_str(GaussianRational(1, 0)) == scalar_str(1)


# -- tensors ------------------------------------------------------------------

@given(tensors(), tensors())
def test_addition_commutes_and_cancels(s, t):
    assert s + t == t + s
    assert (s - s) == FinTensor.zero(2)
    assert not (t - t)


@given(tensors())
def test_flip_is_an_involution(t):
    assert t.flip().flip() == t
    assert t.permute((1, 0)) == t.flip()


@given(tensors(3))
def test_permute_composes(t):
    assert t.permute((1, 2, 0)).permute((2, 0, 1)) == t


@given(tensors(), tensors(), fractions)
def test_apply_is_linear(s, t, c):
    def kern(a, b):
        return FinTensor({(a + b,): 1, (a,): Fraction(b + 1)}, 1)

    assert (s + t.scale(c)).apply(0, 2, kern, 1) == s.apply(0, 2, kern, 1) + t.apply(0, 2, kern, 1).scale(c)


@given(tensors(), tensors(1))
def test_tensor_product_bilinear(s, x):
    assert (s + s).tensor(x) == s.tensor(x).scale(2)
    assert s.tensor(x).legs == 3


@given(tensors())
def test_canonical_is_order_independent(t):
    rebuilt = FinTensor(dict(reversed(list(t.terms.items()))), 2)
    assert rebuilt.canonical() == t.canonical()


def test_canonical_format():
    assert FinTensor.zero(2).canonical() == "0"
    assert delta(2).canonical() == "(2)=1/1"
    t = FinTensor({(1, 0): Fraction(1, 2), (0, 1): -1}, 2)
    assert t.canonical() == "(0,1)=-1/1; (1,0)=1/2"
    assert key_str((1, (2, 3))) == "(1,(2,3))"


def test_leg_mismatch_rejected():
    with pytest.raises(ValueError):
        delta(1) + FinTensor.basis(1, 2)


# -- linear algebra -----------------------------------------------------------

@given(st.lists(st.dictionaries(keys, fractions, min_size=1, max_size=4), min_size=1, max_size=5),
       st.lists(fractions, min_size=5, max_size=5))
def test_echelon_expresses_combinations(vectors, coeffs):
    ech = Echelon()
    kept = []
    for i, v in enumerate(vectors):
        if ech.add(dict(v), i):
            kept.append(i)
    target: dict = {}
    for i, c in zip(range(len(vectors)), coeffs):
        for k, x in vectors[i].items():
            target[k] = target.get(k, 0) + c * x
    target = {k: x for k, x in target.items() if x}
    combo = ech.express(dict(target))
    assert combo is not None
    rebuilt: dict = {}
    for i, c in combo.items():
        for k, x in vectors[i].items():
            rebuilt[k] = rebuilt.get(k, 0) + c * x
    assert {k: x for k, x in rebuilt.items() if x} == target


def test_echelon_rejects_outside_span():
    ech = Echelon()
    ech.add({0: 1, 1: 1}, "a")
    assert ech.add({0: 2, 1: 2}, "b") is False
    assert ech.express({0: 1}) is None


def test_invert_on_basis_recovers_permutation():
    images = {(a, b): FinTensor.basis(b, a) for a in range(3) for b in range(3)}
    inv = invert_on_basis(images, 2)
    for (a, b), img in images.items():
        (k,) = img.terms
        assert inv[k] == FinTensor.basis(a, b)
