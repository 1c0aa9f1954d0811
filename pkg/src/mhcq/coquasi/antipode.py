"""The antipode built from the inverse Galois maps.

``S(a)b = (ε⊗ι)T1⁻¹(a⊗b)`` defines S(a) as a left multiplier and
``bS'(a) = (ι⊗ε)T2⁻¹(b⊗a)`` defines a right multiplier.  When these
multipliers come from algebra elements, :meth:`Antipode.element` recovers the
element by acting on a local unit and checks the result against the action on
the surrounding window.
"""

from __future__ import annotations

from typing import Dict, Hashable, Optional

from ..exactalg import FinTensor
from .structure import CoquasiStructure, build_cop

_MAX_GROWTH = 4


class AntipodeError(ValueError):
    pass


class Antipode:
    def __init__(self, structure: CoquasiStructure, radius: int | None = None):
        self.structure = structure
        self.algebra = structure.algebra
        self.radius = radius if radius is not None else structure.radius
        self._left: Dict[tuple, FinTensor] = {}
        self._right: Dict[tuple, FinTensor] = {}
        self._elements: Dict[Hashable, FinTensor] = {}
        self._inverse: Optional["Antipode"] = None
        self._counit = structure.counit

    # -- multiplier actions -------------------------------------------------

    def left_basis(self, a, b) -> FinTensor:
        """``S(δ_a)·δ_b``."""
        key = (a, b)
        out = self._left.get(key)
        if out is None:
            out = self.structure.T1inv.at(a, b).contract(0, self._counit)
            self._left[key] = out
        return out

    def right_basis(self, b, a) -> FinTensor:
        """``δ_b·S'(δ_a)``."""
        key = (b, a)
        out = self._right.get(key)
        if out is None:
            out = self.structure.T2inv.at(b, a).contract(1, self._counit)
            self._right[key] = out
        return out

    def left(self, a, y: FinTensor) -> FinTensor:
        """``S(δ_a)·y`` for a vector ``y``."""
        return y.apply(0, 1, lambda b: self.left_basis(a, b), 1)

    def right(self, y: FinTensor, a) -> FinTensor:
        """``y·S'(δ_a)``."""
        return y.apply(0, 1, lambda b: self.right_basis(b, a), 1)

    def left_vec(self, x: FinTensor, y: FinTensor) -> FinTensor:
        """``S(x)·y`` for vectors ``x`` and ``y``."""
        acc = FinTensor.zero(1)
        for (a,), c in x.terms.items():
            acc = acc + self.left(a, y).scale(c)
        return acc

    def right_vec(self, y: FinTensor, x: FinTensor) -> FinTensor:
        acc = FinTensor.zero(1)
        for (a,), c in x.terms.items():
            acc = acc + self.right(y, a).scale(c)
        return acc

    # -- materialization ----------------------------------------------------

    def _local_unit(self, r: int | None):
        alg = self.algebra
        u = alg.unit()
        if u is not None:
            return u
        return alg.local_unit(self.structure.window(r))

    def element(self, x) -> FinTensor:
        """S(x) as an algebra element; ``x`` is a basis key or a vector."""
        if isinstance(x, FinTensor):
            acc: Dict[tuple, object] = {}
            for (a,), c in x.terms.items():
                for k, v in self.element(a).terms.items():
                    acc[k] = acc.get(k, 0) + c * v
            return FinTensor(acc, 1)
        out = self._elements.get(x)
        if out is None:
            out = self._materialize(x)
            self._elements[x] = out
        return out

    def _materialize(self, a) -> FinTensor:
        alg = self.algebra
        if alg.unit() is not None:
            cand = self.left(a, alg.unit())
            self._confirm(a, cand, alg.basis())
            return cand
        # nonunital: act on local units of growing windows until the result
        # stabilizes, then confirm against the action one step further out
        r0 = max(self.radius or 1, alg.radius_of(a))
        prev = None
        for r in range(r0, r0 + _MAX_GROWTH + 1):
            cand = self.left(a, self._local_unit(r))
            if prev is not None and cand == prev:
                self._confirm(a, cand, self.structure.window(r + 1))
                return cand
            prev = cand
        raise AntipodeError(f"S(δ_{a!r}) is not expressible with finite support on the window")

    def _confirm(self, a, cand: FinTensor, keys) -> None:
        alg = self.algebra
        for b in keys:
            db = FinTensor._raw({(b,): 1}, 1)
            if alg.mul(cand, db) != self.left_basis(a, b):
                raise AntipodeError(
                    f"S(δ_{a!r}) acts on δ_{b!r} differently from its materialized element")

    def inverse(self) -> "Antipode":
        """S⁻¹, obtained as the antipode of the opposite-coproduct structure."""
        if self._inverse is None:
            self._inverse = Antipode(build_cop(self.structure), self.radius)
        return self._inverse


def build_antipode(structure: CoquasiStructure, radius: int | None = None) -> Antipode:
    return Antipode(structure, radius)
