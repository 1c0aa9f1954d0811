"""Multiplier bialgebra structures given by Galois kernels.

A structure carries the product of the underlying algebra together with

* ``T1(a⊗b) = Δ(a)(1⊗b)`` and ``T2(a⊗b) = (a⊗1)Δ(b)`` and their inverses,
* optionally ``T3(a⊗b) = (1⊗a)Δ(b)`` and ``T4(a⊗b) = Δ(a)(b⊗1)`` with
  inverses, which the opposite-coproduct structure needs,
* a counit on basis keys and an optional conjugate-linear star.

Only products of Δ with algebra elements ever appear, so every kernel value
is a finite tensor even when Δ(a) itself has infinite support.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Hashable, List, Optional

from ..exactalg import (
    Algebra,
    FinTensor,
    FunctionAlgebra,
    GroupAlgebra,
    KernelMap,
    TableAlgebra,
    flip_kernel,
    invert_on_basis,
    solve_system,
)
from ..loopcore import LoopTable, ProductWithIntegers

DEFAULT_RADIUS = 3


class StructureError(ValueError):
    pass


@dataclass
class CoquasiStructure:
    name: str
    algebra: Algebra
    T1: KernelMap
    T2: KernelMap
    T1inv: KernelMap
    T2inv: KernelMap
    counit: Callable[[Hashable], object]
    T3: Optional[KernelMap] = None
    T4: Optional[KernelMap] = None
    T3inv: Optional[KernelMap] = None
    T4inv: Optional[KernelMap] = None
    star: Optional[Callable[[Hashable], FinTensor]] = None
    scalars: str = "rationals"
    radius: Optional[int] = None
    loop: object = None  # the loop (or oracle) behind loop-generated structures
    info: Dict[str, object] = field(default_factory=dict)

    @property
    def finite(self) -> bool:
        return self.algebra.finite

    def window(self, radius: int | None = None) -> List[Hashable]:
        if self.finite:
            return self.algebra.basis()
        r = radius if radius is not None else (self.radius if self.radius is not None else DEFAULT_RADIUS)
        if r < 1:
            raise StructureError("window radius must be at least 1 for infinite-basis structures")
        return self.algebra.basis(r)

    def window_label(self, radius: int | None = None) -> str:
        if self.finite:
            return f"full basis ({len(self.algebra.basis())})"
        r = radius if radius is not None else (self.radius if self.radius is not None else DEFAULT_RADIUS)
        return f"radius {r} ({len(self.window(r))})"

    def eps(self, x: FinTensor):
        total = 0
        for (g,), c in x.terms.items():
            e = self.counit(g)
            if e:
                total = total + c * e
        return total

    def has_cop_kernels(self) -> bool:
        return None not in (self.T3, self.T4, self.T3inv, self.T4inv)

    def star_vec(self, x: FinTensor) -> FinTensor:
        if self.star is None:
            raise StructureError(f"{self.name} has no star structure")
        return x.conjugate_map(self.star)


def build_cop(s: CoquasiStructure) -> CoquasiStructure:
    """The structure with the opposite coproduct Δ^cop = flip∘Δ.

    ``T1^cop(a⊗b) = Δ^cop(a)(1⊗b) = flip(Δ(a)(b⊗1)) = flip T4(a⊗b)`` and the
    other three kernels follow the same pattern; the counit is unchanged.
    """
    if not s.has_cop_kernels():
        raise StructureError(f"{s.name}: T3/T4 kernels are needed for the opposite coproduct")
    return replace(
        s,
        name=s.name + "^cop",
        T1=flip_kernel(s.T4, "after"),
        T2=flip_kernel(s.T3, "after"),
        T1inv=flip_kernel(s.T4inv, "before"),
        T2inv=flip_kernel(s.T3inv, "before"),
        T3=flip_kernel(s.T2, "after"),
        T4=flip_kernel(s.T1, "after"),
        T3inv=flip_kernel(s.T2inv, "before"),
        T4inv=flip_kernel(s.T1inv, "before"),
        info=dict(s.info, cop_of=s.name),
    )


def _pair(a, b) -> FinTensor:
    return FinTensor._raw({(a, b): 1}, 2)


def function_algebra_structure(loop, name: str = "", star: bool = True,
                               scalars: str = "rationals") -> CoquasiStructure:
    """Finitely supported functions on a loop with Δ(f)(x, y) = f(xy).

    Division in the loop gives every kernel in closed form; for example
    ``Δ(δ_g)(1⊗δ_h) = δ_{g/h}⊗δ_h`` because ``(g/h)·h = g``.
    """
    L = loop
    e = L.identity

    T1 = KernelMap(lambda g, h: _pair(L.rdiv(g, h), h), 2, 2, "T1")
    T2 = KernelMap(lambda g, h: _pair(g, L.ldiv(g, h)), 2, 2, "T2")
    T1inv = KernelMap(lambda x, h: _pair(L.mul(x, h), h), 2, 2, "T1inv")
    T2inv = KernelMap(lambda g, y: _pair(g, L.mul(g, y)), 2, 2, "T2inv")
    # (1⊗δ_a)Δ(δ_b) = δ_{b/a}⊗δ_a and Δ(δ_a)(δ_b⊗1) = δ_b⊗δ_{b\a}
    T3 = KernelMap(lambda a, b: _pair(L.rdiv(b, a), a), 2, 2, "T3")
    T4 = KernelMap(lambda a, b: _pair(b, L.ldiv(b, a)), 2, 2, "T4")
    T3inv = KernelMap(lambda x, a: _pair(a, L.mul(x, a)), 2, 2, "T3inv")
    T4inv = KernelMap(lambda b, y: _pair(L.mul(b, y), b), 2, 2, "T4inv")

    def counit(g):
        return 1 if g == e else 0

    def star_fn(g):
        return FinTensor._raw({(g,): 1}, 1)

    algebra = FunctionAlgebra(L, name=name or "k(L)")
    return CoquasiStructure(
        name=name or algebra.name, algebra=algebra,
        T1=T1, T2=T2, T1inv=T1inv, T2inv=T2inv, counit=counit,
        T3=T3, T4=T4, T3inv=T3inv, T4inv=T4inv,
        star=star_fn if star else None, scalars=scalars, loop=L,
        info={"kind": "function-algebra"},
    )


def group_algebra_structure(group: LoopTable, name: str = "", star: bool = True,
                            scalars: str = "rationals") -> CoquasiStructure:
    """The group algebra k[G] with Δ(g) = g⊗g, ε(g) = 1, g* = g⁻¹."""
    G = group
    algebra = GroupAlgebra(G, name=name or f"k[{G.order}]")

    T1 = KernelMap(lambda g, h: _pair(g, G.mul(g, h)), 2, 2, "T1")
    T2 = KernelMap(lambda g, h: _pair(G.mul(g, h), h), 2, 2, "T2")
    T1inv = KernelMap(lambda g, k: _pair(g, G.ldiv(g, k)), 2, 2, "T1inv")
    T2inv = KernelMap(lambda k, h: _pair(G.rdiv(k, h), h), 2, 2, "T2inv")
    # (1⊗g)Δ(h) = h⊗gh and Δ(g)(h⊗1) = gh⊗g
    T3 = KernelMap(lambda g, h: _pair(h, G.mul(g, h)), 2, 2, "T3")
    T4 = KernelMap(lambda g, h: _pair(G.mul(g, h), g), 2, 2, "T4")
    T3inv = KernelMap(lambda x, y: _pair(G.rdiv(y, x), x), 2, 2, "T3inv")
    T4inv = KernelMap(lambda x, y: _pair(y, G.ldiv(y, x)), 2, 2, "T4inv")

    def star_fn(g):
        return FinTensor._raw({(G.right_inverse(g),): 1}, 1)

    return CoquasiStructure(
        name=name or algebra.name, algebra=algebra,
        T1=T1, T2=T2, T1inv=T1inv, T2inv=T2inv, counit=lambda g: 1,
        T3=T3, T4=T4, T3inv=T3inv, T4inv=T4inv,
        star=star_fn if star else None, scalars=scalars, loop=G,
        info={"kind": "group-algebra"},
    )


def table_kernel(table: Dict[tuple, FinTensor], name: str, arity: int = 2,
                 out_legs: int = 2) -> KernelMap:
    """Kernel read from an explicit table; absent keys map to zero."""
    zero = FinTensor.zero(out_legs)
    return KernelMap(lambda *k: table.get(k, zero), arity, out_legs, name)


def invert_kernel(kernel: KernelMap, basis: List[Hashable], name: str) -> KernelMap:
    """Invert a 2->2 kernel on a finite basis by exact elimination."""
    images = {(a, b): kernel.at(a, b) for a in basis for b in basis}
    try:
        inv = invert_on_basis(images, 2)
    except ValueError as exc:
        raise StructureError(f"{kernel.name} is not bijective: {exc}") from None
    for a in basis:
        for b in basis:
            inv.setdefault((a, b), None)
    missing = [k for k, v in inv.items() if v is None]
    if missing:
        raise StructureError(f"{kernel.name} is not surjective: {missing[0]!r} is not in the image")
    return table_kernel(inv, name)


def solve_counit(algebra: Algebra, T1: KernelMap, T2: KernelMap | None = None) -> Optional[Dict[Hashable, object]]:
    """Solve the counit laws ``(ε⊗ι)T1(a⊗b) = ab`` (and ``(ι⊗ε)T2 = m``).

    Returns ``None`` if the linear system is inconsistent or the counit is
    not uniquely determined.
    """
    basis = algebra.basis()
    eqs = []
    for a in basis:
        for b in basis:
            prod = algebra.mul_basis(a, b).terms
            for kernel, leg in ((T1, 0), (T2, 1)):
                if kernel is None:
                    continue
                rows: Dict[Hashable, Dict[Hashable, object]] = {}
                for k, c in kernel.at(a, b).terms.items():
                    other = k[1 - leg]
                    row = rows.setdefault(other, {})
                    row[k[leg]] = row.get(k[leg], 0) + c
                for out in set(rows) | {k[0] for k in prod}:
                    eqs.append((rows.get(out, {}), prod.get((out,), 0)))
    sol, free = solve_system(eqs, basis)
    if sol is None or free:
        return None
    return sol


def structure_from_coproduct(algebra: Algebra, coproduct: Dict[Hashable, FinTensor],
                             counit: Dict[Hashable, object] | None = None,
                             star: Dict[Hashable, FinTensor] | None = None,
                             name: str = "explicit", scalars: str = "rationals") -> CoquasiStructure:
    """Finite-dimensional structure from Δ on basis elements.

    All four Galois kernels are products of Δ with basis elements; their
    inverses are found by exact elimination.  A missing counit is solved from
    the counit laws.
    """
    basis = algebra.basis()
    zero2 = FinTensor.zero(2)

    def d(a):
        return coproduct.get(a, zero2)

    def kernel(fn, label):
        tab = {(a, b): fn(a, b) for a in basis for b in basis}
        return table_kernel(tab, label)

    delta_b = {b: FinTensor._raw({(b,): 1}, 1) for b in basis}
    T1 = kernel(lambda a, b: algebra.mul_leg_right(d(a), 1, delta_b[b]), "T1")
    T2 = kernel(lambda a, b: algebra.mul_leg_left(delta_b[a], d(b), 0), "T2")
    T3 = kernel(lambda a, b: algebra.mul_leg_left(delta_b[a], d(b), 1), "T3")
    T4 = kernel(lambda a, b: algebra.mul_leg_right(d(a), 0, delta_b[b]), "T4")
    return _finish_explicit(algebra, T1, T2, T3, T4, counit, star, name, scalars)


def structure_from_kernels(algebra: Algebra, T1: Dict[tuple, FinTensor], T2: Dict[tuple, FinTensor],
                           T3: Dict[tuple, FinTensor] | None = None,
                           T4: Dict[tuple, FinTensor] | None = None,
                           counit: Dict[Hashable, object] | None = None,
                           star: Dict[Hashable, FinTensor] | None = None,
                           name: str = "explicit", scalars: str = "rationals") -> CoquasiStructure:
    """Finite-dimensional structure from explicit Galois kernel tables.

    When T3/T4 are absent and the algebra has a unit, Δ(a) = T1(a⊗1) is
    materialized and T3/T4 are computed from it.
    """
    k1, k2 = table_kernel(T1, "T1"), table_kernel(T2, "T2")
    if T3 is not None and T4 is not None:
        k3, k4 = table_kernel(T3, "T3"), table_kernel(T4, "T4")
    else:
        u = algebra.unit()
        if u is None:
            k3 = k4 = None
        else:
            basis = algebra.basis()
            dd = {a: FinTensor._raw({(a,): 1}, 1).tensor(u).apply(0, 2, k1.at, 2) for a in basis}
            delta_b = {b: FinTensor._raw({(b,): 1}, 1) for b in basis}
            k3 = table_kernel({(a, b): algebra.mul_leg_left(delta_b[a], dd[b], 1)
                               for a in basis for b in basis}, "T3")
            k4 = table_kernel({(a, b): algebra.mul_leg_right(dd[a], 0, delta_b[b])
                               for a in basis for b in basis}, "T4")
    return _finish_explicit(algebra, k1, k2, k3, k4, counit, star, name, scalars)


def _finish_explicit(algebra, T1, T2, T3, T4, counit, star, name, scalars):
    basis = algebra.basis()
    T1inv = invert_kernel(T1, basis, "T1inv")
    T2inv = invert_kernel(T2, basis, "T2inv")
    T3inv = invert_kernel(T3, basis, "T3inv") if T3 is not None else None
    T4inv = invert_kernel(T4, basis, "T4inv") if T4 is not None else None
    info = {"kind": "explicit"}
    if counit is None:
        counit = solve_counit(algebra, T1, T2)
        if counit is None:
            raise StructureError(f"{name}: the counit laws have no unique solution")
        info["counit"] = "solved"
    eps = dict(counit)
    star_fn = None
    if star is not None:
        zero = FinTensor.zero(1)
        star_tab = dict(star)
        star_fn = lambda g: star_tab.get(g, zero)  # noqa: E731
    return CoquasiStructure(
        name=name, algebra=algebra, T1=T1, T2=T2, T1inv=T1inv, T2inv=T2inv,
        counit=lambda g: eps.get(g, 0), T3=T3, T4=T4, T3inv=T3inv, T4inv=T4inv,
        star=star_fn, scalars=scalars, info=info,
    )


def loop_times_integers(loop: LoopTable, name: str = "", radius: int = DEFAULT_RADIUS) -> CoquasiStructure:
    """k_fin(L×ℤ): finitely supported functions on the product with ℤ."""
    s = function_algebra_structure(ProductWithIntegers(loop), name=name or "k_fin(Lxℤ)")
    s.radius = radius
    return s


def with_counit(s: CoquasiStructure, values: Dict[Hashable, object]) -> CoquasiStructure:
    """Copy of ``s`` with some counit values overridden (used for fixtures)."""
    base = s.counit
    return replace(s, counit=lambda g: values[g] if g in values else base(g))


def table_algebra(basis, products) -> TableAlgebra:
    return TableAlgebra(basis, products)
