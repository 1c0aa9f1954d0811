"""Multiplier algebras and completed modules as pairs of action maps.

A multiplier ``m`` of a nondegenerate algebra A is known through the two
maps ``b ↦ m·b`` and ``b ↦ b·m``.  Nothing is ever expanded into
coefficients unless :meth:`Multiplier.materialize` is asked to, which is how
Δ(a) over an infinite basis stays finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Optional, Sequence

from .exactalg import (
    Algebra,
    Echelon,
    FinTensor,
    KernelMap,
    ScalarAlgebra,
    TensorProductAlgebra,
    delta,
    pack,
    unpack,
)
from .sweep import Identity, VerificationReport, combine, run


class ExtensionError(ValueError):
    """Raised when a homomorphism cannot be extended consistently on a window."""


@dataclass
class Multiplier:
    algebra: Algebra
    left_action: KernelMap   # b ↦ m·b
    right_action: KernelMap  # b ↦ b·m
    name: str = "m"

    def act_left(self, y: FinTensor) -> FinTensor:
        return y.apply(0, 1, self.left_action.at, 1)

    def act_right(self, y: FinTensor) -> FinTensor:
        return y.apply(0, 1, self.right_action.at, 1)

    def __mul__(self, other: "Multiplier") -> "Multiplier":
        return multiplier_product(self, other)

    def equals_on(self, other: "Multiplier", window: Sequence[Hashable]) -> bool:
        return all(self.left_action.at(b) == other.left_action.at(b)
                   and self.right_action.at(b) == other.right_action.at(b) for b in window)

    def check_compatibility(self, window: Sequence[Hashable], workers: int | None = None) -> VerificationReport:
        """``a·(m·b) = (a·m)·b`` on window pairs."""
        A = self.algebra

        def ev(a, b):
            return A.mul(delta(a), self.left_action.at(b)), A.mul(self.right_action.at(a), delta(b))

        return run(Identity(f"{self.name}: a(mb) = (am)b", [list(window)] * 2, ev,
                            f"{len(window)} basis elements"), workers)

    def materialize(self, window: Sequence[Hashable]) -> Optional[FinTensor]:
        """The element x with embed(x) = m on the window, if one exists.

        Uses the unit (or the local unit of the window) to produce the
        candidate ``m·u`` and confirms both actions on every window element.
        """
        A = self.algebra
        u = A.unit()
        if u is None:
            u = A.local_unit(list(window))
        cand = self.act_left(u)
        for b in window:
            db = delta(b)
            if A.mul(cand, db) != self.left_action.at(b) or A.mul(db, cand) != self.right_action.at(b):
                return None
        return cand


def _k1(fn, name):
    return KernelMap(fn, 1, 1, name)


def embed(algebra: Algebra, x: FinTensor, name: str = "") -> Multiplier:
    """The multiplier given by left and right multiplication by ``x``."""
    return Multiplier(algebra,
                      _k1(lambda b: algebra.mul(x, delta(b)), "x·b"),
                      _k1(lambda b: algebra.mul(delta(b), x), "b·x"),
                      name or f"embed({x.canonical()})")


def unit_multiplier(algebra: Algebra) -> Multiplier:
    return Multiplier(algebra, _k1(delta, "1·b"), _k1(delta, "b·1"), "1")


def multiplier_product(m: Multiplier, n: Multiplier) -> Multiplier:
    """``(mn)·b = m·(n·b)`` and ``b·(mn) = (b·m)·n``."""
    if m.algebra is not n.algebra:
        raise ValueError("multipliers over different algebras")
    return Multiplier(m.algebra,
                      _k1(lambda b: m.act_left(n.left_action.at(b)), "mn·b"),
                      _k1(lambda b: n.act_right(m.right_action.at(b)), "b·mn"),
                      f"{m.name}{n.name}")


def support_growth(m: Multiplier, windows: Sequence[Sequence[Hashable]]) -> List[Optional[int]]:
    """Support of the best finite candidate for ``m`` on growing windows.

    ``None`` means no finite element reproduces ``m`` on that window.
    Unbounded growth shows that ``m`` is not the embedding of any finitely
    supported vector.
    """
    out = []
    for w in windows:
        x = m.materialize(w)
        out.append(None if x is None else len(x))
    return out


# -- multipliers of A⊗A --------------------------------------------------------

class TensorMultiplier(Multiplier):
    """A multiplier of A⊗A; keys of the tensor algebra are basis pairs."""

    def __init__(self, algebra: Algebra, left: Callable, right: Callable, name: str = "M"):
        tp = TensorProductAlgebra(algebra, algebra)
        super().__init__(tp, _k1(lambda k: pack(left(*k)), "M·(x⊗y)"),
                         _k1(lambda k: pack(right(*k)), "(x⊗y)·M"), name)
        self.base = algebra

    def times(self, t: FinTensor) -> FinTensor:
        """``M·t`` for a two-leg tensor."""
        return unpack(self.act_left(pack(t)))

    def rtimes(self, t: FinTensor) -> FinTensor:
        """``t·M`` for a two-leg tensor."""
        return unpack(self.act_right(pack(t)))


def delta_as_multiplier(structure, a: FinTensor) -> TensorMultiplier:
    """Δ(a) acting on A⊗A through the Galois kernels.

    ``Δ(a)(x⊗y) = T1(a⊗y)(x⊗1)`` and ``(x⊗y)Δ(a) = (1⊗y)T2(x⊗a)``, so
    only T1 and T2 are needed for both actions.
    """
    A = structure.algebra

    def left(x, y):
        t = structure.T1(a.tensor(delta(y)))
        return A.mul_leg_right(t, 0, delta(x))

    def right(x, y):
        t = structure.T2(delta(x).tensor(a))
        return A.mul_leg_left(delta(y), t, 1)

    return TensorMultiplier(A, left, right, f"Δ({a.canonical()})")


# -- extending nondegenerate homomorphisms ---------------------------------------

def _vec_image(f: Callable[[Hashable], Multiplier], x: FinTensor, b, side: str) -> FinTensor:
    acc = None
    for (g,), c in x.terms.items():
        m = f(g)
        y = m.left_action.at(b) if side == "left" else m.right_action.at(b)
        y = y.scale(c)
        acc = y if acc is None else acc + y
    return acc if acc is not None else FinTensor.zero(1)


def _decompositions(f, source, target, c, side):
    """Single-term matches ``f(a)·b = λc`` (or ``b·f(a) = λc``) and, failing
    those, one solved combination of such products."""
    singles = []
    cands = []
    cvec = delta(c)
    for a in source:
        m = f(a)
        for b in target:
            y = m.left_action.at(b) if side == "left" else m.right_action.at(b)
            if not y:
                continue
            cands.append(((a, b), y))
            if len(y) == 1:
                (k, v), = y.terms.items()
                if k == (c,):
                    singles.append({(a, b): Fraction(1) / v})
    if singles:
        return singles
    ech = Echelon()
    for lab, y in cands:
        ech.add(y.terms, lab)
    combo = ech.express(cvec.terms)
    return [combo] if combo is not None else []


def extend_hom(f: Callable[[Hashable], Multiplier], source: Sequence[Hashable], target_algebra: Algebra,
               target: Sequence[Hashable], m: Multiplier, name: str = "") -> Multiplier:
    """Extend ``f: A → M(B)`` to M(A) and apply it to ``m``.

    ``f(m)·c`` is computed from a decomposition ``c = Σ λ f(a)·b`` as
    ``Σ λ f(m·a)·b``; every available single-term decomposition must give
    the same answer, otherwise :class:`ExtensionError` is raised.
    """
    cache_l: Dict[Hashable, FinTensor] = {}
    cache_r: Dict[Hashable, FinTensor] = {}

    def compute(c, side):
        decs = _decompositions(f, source, target, c, side)
        if not decs:
            raise ExtensionError(f"δ_{c!r} is not in f(A)·B on the window; f may be degenerate")
        results = []
        for dec in decs:
            acc = FinTensor.zero(1)
            for (a, b), lam in dec.items():
                if side == "left":
                    ma = m.act_left(delta(a))
                    acc = acc + _vec_image(f, ma, b, "left").scale(lam)
                else:
                    am = m.act_right(delta(a))
                    acc = acc + _vec_image(f, am, b, "right").scale(lam)
            results.append(acc)
        first = results[0]
        for r in results[1:]:
            if r != first:
                raise ExtensionError(f"decompositions of δ_{c!r} disagree: {first.canonical()} vs {r.canonical()}")
        return first

    def left(c):
        if c not in cache_l:
            cache_l[c] = compute(c, "left")
        return cache_l[c]

    def right(c):
        if c not in cache_r:
            cache_r[c] = compute(c, "right")
        return cache_r[c]

    return Multiplier(target_algebra, _k1(left, "f(m)·c"), _k1(right, "c·f(m)"), name or f"f({m.name})")


def counit_as_hom(structure) -> Callable[[Hashable], Multiplier]:
    """ε viewed as a homomorphism A → k = M(k)."""
    k = ScalarAlgebra()

    def f(a):
        return embed(k, delta("1", structure.counit(a)) if structure.counit(a) else FinTensor.zero(1))

    f.target = k  # type: ignore[attr-defined]
    return f


def delta_as_hom(structure) -> Callable[[Hashable], TensorMultiplier]:
    cache: Dict[Hashable, TensorMultiplier] = {}

    def f(a):
        if a not in cache:
            cache[a] = delta_as_multiplier(structure, delta(a))
        return cache[a]

    return f


# -- completed modules --------------------------------------------------------------

class Bimodule:
    """An A-bimodule X with basis-level actions."""

    def left(self, a, x: FinTensor) -> FinTensor:
        raise NotImplementedError

    def right(self, x: FinTensor, a) -> FinTensor:
        raise NotImplementedError


class LegBimodule(Bimodule):
    """A acting by multiplication on one leg of a tensor space (A⊗V or V⊗A)."""

    def __init__(self, algebra: Algebra, leg: int):
        self.algebra = algebra
        self.leg = leg

    def left(self, a, x):
        return self.algebra.mul_leg_left(delta(a), x, self.leg)

    def right(self, x, a):
        return self.algebra.mul_leg_right(x, self.leg, delta(a))


@dataclass
class CompletedElement:
    """An element of M₀(X): maps λ, ρ: A → X with a·λ(a′) = ρ(a)·a′."""

    lam: Callable[[Hashable], FinTensor]
    rho: Callable[[Hashable], FinTensor]
    module: Bimodule
    name: str = "z"

    def lam_vec(self, x: FinTensor) -> FinTensor:
        return _linear(self.lam, x)

    def rho_vec(self, x: FinTensor) -> FinTensor:
        return _linear(self.rho, x)


def _linear(fn, x: FinTensor) -> FinTensor:
    acc = None
    for (g,), c in x.terms.items():
        y = fn(g).scale(c)
        acc = y if acc is None else acc + y
    if acc is None:
        raise ValueError("cannot infer the leg count of a zero image")
    return acc


def element_of_module(module: Bimodule, x: FinTensor, name: str = "x") -> CompletedElement:
    """The completed element λ(a) = x·a, ρ(a) = a·x of a plain element x."""
    return CompletedElement(lambda a: module.right(x, a), lambda a: module.left(a, x), module, name)


def completed_module_check(z: CompletedElement, algebra: Algebra, window: Sequence[Hashable],
                           workers: int | None = None) -> VerificationReport:
    """The defining relation and the derived laws on window pairs."""
    X = z.module
    w = list(window)
    label = f"{len(w)} basis elements"

    def relation(a, b):
        return X.left(a, z.lam(b)), X.right(z.rho(a), b)

    def rho_law(a, b):
        ab = algebra.mul_basis(a, b)
        lhs = z.rho_vec(ab) if ab else X.left(a, z.rho(b)).scale(0)
        return lhs, X.left(a, z.rho(b))

    def lam_law(a, b):
        ab = algebra.mul_basis(a, b)
        lhs = z.lam_vec(ab) if ab else X.right(z.lam(a), b).scale(0)
        return lhs, X.right(z.lam(a), b)

    parts = [run(Identity(f"{z.name}: a·λ(a′) = ρ(a)·a′", [w, w], relation, label), workers),
             run(Identity(f"{z.name}: ρ(aa′) = a·ρ(a′)", [w, w], rho_law, label), workers),
             run(Identity(f"{z.name}: λ(aa′) = λ(a)·a′", [w, w], lam_law, label), workers)]
    return combine(f"completed module element {z.name}", parts, label)
