"""Algebras with a countable basis, kernel maps, and leg-wise products."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence

from .linalg import solve_system
from .scalars import Scalar
from .tensor import FinTensor, delta


class KernelMap:
    """A linear map given on basis keys, extended linearly and memoized.

    ``fn`` takes ``arity`` basis keys and returns a :class:`FinTensor` with
    ``out_legs`` legs (finite propagation: every basis input has finite
    support output).
    """

    def __init__(self, fn: Callable[..., FinTensor], arity: int, out_legs: int, name: str = ""):
        self.fn = fn
        self.arity = arity
        self.out_legs = out_legs
        self.name = name or getattr(fn, "__name__", "kernel")
        self._cache: Dict[tuple, FinTensor] = {}

    def at(self, *keys) -> FinTensor:
        try:
            return self._cache[keys]
        except KeyError:
            out = self.fn(*keys)
            if out.legs != self.out_legs:
                raise ValueError(f"{self.name}: kernel returned {out.legs} legs, expected {self.out_legs}")
            self._cache[keys] = out
            return out

    def __call__(self, t: FinTensor) -> FinTensor:
        if t.legs != self.arity:
            raise ValueError(f"{self.name}: expected a {self.arity}-leg input, got {t.legs}")
        return t.apply(0, self.arity, self.at, self.out_legs)

    def on_legs(self, t: FinTensor, start: int) -> FinTensor:
        """Apply to legs ``start:start+arity`` of a larger tensor."""
        return t.apply(start, self.arity, self.at, self.out_legs)

    def __repr__(self):
        return f"KernelMap({self.name}, {self.arity}->{self.out_legs})"


def compose(outer: KernelMap, inner: KernelMap, name: str = "") -> KernelMap:
    if inner.out_legs != outer.arity:
        raise ValueError("arity mismatch in composition")
    return KernelMap(lambda *k: outer(inner.at(*k)), inner.arity, outer.out_legs,
                     name or f"{outer.name}∘{inner.name}")


def flip_kernel(k: KernelMap, side: str) -> KernelMap:
    """``flip∘k`` (side='after') or ``k∘flip`` (side='before') for 2->2 kernels."""
    if side == "after":
        return KernelMap(lambda a, b: k.at(a, b).flip(), 2, 2, f"flip∘{k.name}")
    return KernelMap(lambda a, b: k.at(b, a), 2, 2, f"{k.name}∘flip")


class Algebra:
    """Associative algebra over an exact field with an (oracle) basis."""

    name = "algebra"
    finite = True

    def basis(self, radius: int | None = None) -> List[Hashable]:
        raise NotImplementedError

    def mul_basis(self, g, h) -> FinTensor:
        raise NotImplementedError

    def mul(self, x: FinTensor, y: FinTensor) -> FinTensor:
        if x.legs != 1 or y.legs != 1:
            raise ValueError("algebra product takes one-leg vectors")
        acc: dict = {}
        for (g,), c in x.terms.items():
            for (h,), d in y.terms.items():
                for k, e in self.mul_basis(g, h).terms.items():
                    acc[k] = acc.get(k, 0) + c * d * e
        return FinTensor(acc, 1)

    def left_mul(self, x: FinTensor, g) -> FinTensor:
        """``x * delta_g``."""
        return self.mul(x, delta(g))

    def right_mul(self, g, x: FinTensor) -> FinTensor:
        """``delta_g * x``."""
        return self.mul(delta(g), x)

    def unit(self) -> Optional[FinTensor]:
        return None

    def local_unit(self, keys: Sequence[Hashable]) -> FinTensor:
        u = self.unit()
        if u is None:
            raise ValueError(f"{self.name} has no unit and no local units")
        return u

    def radius_of(self, g) -> int:
        return 0

    # leg-wise products on tensors
    def mul_leg_left(self, x: FinTensor, t: FinTensor, leg: int) -> FinTensor:
        """Multiply leg ``leg`` of ``t`` on the left by ``x``."""
        return t.apply(leg, 1, lambda g: self.left_mul(x, g), 1)

    def mul_leg_right(self, t: FinTensor, leg: int, x: FinTensor) -> FinTensor:
        """Multiply leg ``leg`` of ``t`` on the right by ``x``."""
        return t.apply(leg, 1, lambda g: self.right_mul(g, x), 1)

    def mul_tensors(self, s: FinTensor, t: FinTensor) -> FinTensor:
        """Leg-wise product in the tensor-power algebra."""
        if s.legs != t.legs:
            raise ValueError("leg mismatch in tensor product")
        acc: dict = {}
        n = s.legs
        for k1, c1 in s.terms.items():
            for k2, c2 in t.terms.items():
                parts = [self.mul_basis(k1[i], k2[i]) for i in range(n)]
                if not all(parts):
                    continue
                prod = parts[0]
                for p in parts[1:]:
                    prod = prod.tensor(p)
                for k, c in prod.terms.items():
                    acc[k] = acc.get(k, 0) + c1 * c2 * c
        return FinTensor(acc, n)


class FunctionAlgebra(Algebra):
    """Finitely supported functions on a loop, pointwise product."""

    def __init__(self, loop, name: str = ""):
        self.loop = loop
        self.finite = loop.finite
        self.name = name or f"k({getattr(loop, 'order', '?')})"

    def basis(self, radius: int | None = None):
        return self.loop.window(radius)

    def mul_basis(self, g, h):
        return delta(g) if g == h else FinTensor.zero(1)

    def mul(self, x, y):
        if len(x.terms) > len(y.terms):
            x, y = y, x
        yt = y.terms
        out = {}
        for k, c in x.terms.items():
            d = yt.get(k)
            if d is not None:
                out[k] = c * d
        return FinTensor(out, 1)

    def left_mul(self, x, g):
        c = x.terms.get((g,))
        return FinTensor._raw({(g,): c}, 1) if c else FinTensor._raw({}, 1)

    def right_mul(self, g, x):
        return self.left_mul(x, g)

    def mul_leg_left(self, x, t, leg):
        xt = x.terms
        out = {}
        for k, c in t.terms.items():
            d = xt.get((k[leg],))
            if d is not None:
                out[k] = d * c
        return FinTensor._raw(out, t.legs)

    def mul_leg_right(self, t, leg, x):
        return self.mul_leg_left(x, t, leg)

    def unit(self):
        if not self.finite:
            return None
        return FinTensor({(g,): 1 for g in self.loop.elements()}, 1)

    def local_unit(self, keys):
        return FinTensor({(g,): 1 for g in keys}, 1)

    def radius_of(self, g):
        return self.loop.radius_of(g) if not self.finite else 0


class GroupAlgebra(Algebra):
    """The group algebra of a finite group given by its Cayley table."""

    def __init__(self, group, name: str = ""):
        from ..loopcore import predicates

        if predicates(group).associative is not True:
            raise ValueError("group algebra needs an associative loop (a group)")
        self.group = group
        self.name = name or f"k[{group.order}]"

    def basis(self, radius=None):
        return self.group.elements()

    def mul_basis(self, g, h):
        return delta(self.group.mul(g, h))

    def unit(self):
        return delta(self.group.identity)


class TableAlgebra(Algebra):
    """Finite-dimensional algebra from explicit structure constants."""

    def __init__(self, basis: Sequence[Hashable], products: Dict[tuple, FinTensor], name: str = "table"):
        self._basis = list(basis)
        self.products = products
        self.name = name
        self._unit: Optional[FinTensor] = None
        self._unit_searched = False

    def basis(self, radius=None):
        return list(self._basis)

    def mul_basis(self, g, h):
        return self.products.get((g, h), FinTensor.zero(1))

    def unit(self):
        if not self._unit_searched:
            self._unit = find_unit(self)
            self._unit_searched = True
        return self._unit


class ScalarAlgebra(Algebra):
    """The ground field as a one-dimensional algebra with basis ``'1'``."""

    name = "k"

    def basis(self, radius=None):
        return ["1"]

    def mul_basis(self, g, h):
        return delta("1")

    def unit(self):
        return delta("1")


class TensorProductAlgebra(Algebra):
    """``A ⊗ B`` with basis pairs and componentwise product.

    Elements are one-leg vectors over pair keys; :func:`pack` and
    :func:`unpack` convert to and from two-leg tensors.
    """

    def __init__(self, left: Algebra, right: Algebra):
        self.left = left
        self.right = right
        self.finite = left.finite and right.finite
        self.name = f"{left.name}⊗{right.name}"

    def basis(self, radius=None):
        return [(a, b) for a in self.left.basis(radius) for b in self.right.basis(radius)]

    def mul_basis(self, g, h):
        p = self.left.mul_basis(g[0], h[0]).tensor(self.right.mul_basis(g[1], h[1]))
        return pack(p)

    def unit(self):
        u, v = self.left.unit(), self.right.unit()
        if u is None or v is None:
            return None
        return pack(u.tensor(v))

    def local_unit(self, keys):
        u = self.left.local_unit([k[0] for k in keys])
        v = self.right.local_unit([k[1] for k in keys])
        return pack(u.tensor(v))


def pack(t: FinTensor) -> FinTensor:
    """Two-leg tensor -> one-leg vector over pair keys."""
    return FinTensor._raw({(k,): c for k, c in t.terms.items()}, 1)


def unpack(v: FinTensor) -> FinTensor:
    return FinTensor._raw({k[0]: c for k, c in v.terms.items()}, 2)


def find_unit(alg: Algebra) -> Optional[FinTensor]:
    """Solve ``u*b = b = b*u`` on the (finite) basis; ``None`` if no unit."""
    basis = alg.basis()
    eqs = []
    for b in basis:
        for side in ("left", "right"):
            # coefficient of each basis element c in u*b (or b*u), u = sum x_g g
            rows: Dict[Hashable, Dict[Hashable, Scalar]] = {}
            for g in basis:
                prod = alg.mul_basis(g, b) if side == "left" else alg.mul_basis(b, g)
                for (c,), s in prod.terms.items():
                    rows.setdefault(c, {})[g] = s
            for c in basis:
                eqs.append((rows.get(c, {}), 1 if c == b else 0))
    sol, free = solve_system(eqs, basis)
    if sol is None:
        return None
    return FinTensor({(g,): v for g, v in sol.items()}, 1)


@dataclass
class NondegeneracyReport:
    passed: bool
    window_size: int
    witness: Optional[Hashable] = None
    side: str = ""

    def describe(self) -> str:
        if self.passed:
            return f"nondegenerate on {self.window_size} basis elements"
        return f"delta_{self.witness!r} annihilates the window from the {self.side}"


def check_nondegeneracy(alg: Algebra, window: Sequence[Hashable]) -> NondegeneracyReport:
    """Every window basis element must have nonzero left and right products."""
    if not window:
        raise ValueError("window must be nonempty")
    for g in window:
        if not any(alg.mul_basis(g, b) for b in window):
            return NondegeneracyReport(False, len(window), g, "right")
        if not any(alg.mul_basis(b, g) for b in window):
            return NondegeneracyReport(False, len(window), g, "left")
    return NondegeneracyReport(True, len(window))


def zero_product_algebra(n: int = 2) -> TableAlgebra:
    return TableAlgebra(list(range(n)), {}, name="zero-product")
