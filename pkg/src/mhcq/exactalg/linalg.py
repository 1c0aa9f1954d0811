"""Exact sparse Gauss-Jordan elimination over rationals / Gaussian rationals.

Vectors are plain ``dict`` objects mapping coordinates to nonzero scalars.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .scalars import Scalar
from .tensor import FinTensor, sort_key


def _axpy(y: dict, a: Scalar, x: dict) -> None:
    """y += a*x, pruning zeros."""
    for k, c in x.items():
        v = y.get(k, 0) + a * c
        if v:
            y[k] = v
        else:
            y.pop(k, None)


def _inv(c: Scalar) -> Scalar:
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


class Echelon:
    """Fully reduced row basis that remembers how each row was combined.

    ``add`` inserts a vector under a label; ``express`` writes a target as a
    combination of the labels, or returns ``None`` outside the span.
    """

    def __init__(self, order=sort_key):
        self.rows: Dict[Hashable, Tuple[dict, dict]] = {}  # pivot -> (row, combo)
        self.order = order

    def __len__(self):
        return len(self.rows)

    def _reduce(self, vec: dict, combo: dict) -> None:
        for p in [k for k in vec if k in self.rows]:
            c = vec.get(p)
            if not c:
                continue
            row, rcombo = self.rows[p]
            _axpy(vec, -c, row)
            _axpy(combo, -c, rcombo)

    def add(self, vec: dict, label: Hashable) -> bool:
        vec = {k: c for k, c in vec.items() if c}
        combo = {label: 1}
        self._reduce(vec, combo)
        if not vec:
            return False
        pivot = min(vec, key=self.order)
        inv = _inv(vec[pivot])
        vec = {k: c * inv for k, c in vec.items()}
        combo = {k: c * inv for k, c in combo.items()}
        for p, (row, rcombo) in self.rows.items():
            c = row.get(pivot)
            if c:
                _axpy(row, -c, vec)
                _axpy(rcombo, -c, combo)
        self.rows[pivot] = (vec, combo)
        return True

    def express(self, target: dict) -> Optional[dict]:
        vec = {k: c for k, c in target.items() if c}
        combo: dict = {}
        self._reduce(vec, combo)
        if vec:
            return None
        return {k: -c for k, c in combo.items() if c}


def solve_combination(candidates: Sequence[Tuple[Hashable, FinTensor]],
                      target: FinTensor) -> Optional[Dict[Hashable, Scalar]]:
    """Find coefficients ``x`` with ``sum x[label]*vec == target``."""
    ech = Echelon()
    for label, vec in candidates:
        ech.add(vec.terms, label)
    return ech.express(target.terms)


def invert_on_basis(images: Dict[Hashable, FinTensor], legs: int) -> Dict[Hashable, FinTensor]:
    """Invert a linear map given by its images of domain basis keys.

    Returns ``target key -> preimage`` for every key in the span of the
    images.  Raises ``ValueError`` when the map is not injective or the
    image keys are not spanned.
    """
    ech = Echelon()
    for label, vec in images.items():
        if not ech.add(vec.terms, label):
            raise ValueError(f"map is not injective (image of {label!r} is dependent)")
    out = {}
    keys = set()
    for vec in images.values():
        keys.update(vec.terms)
    for k in keys:
        combo = ech.express({k: 1})
        if combo is None:
            raise ValueError(f"basis tensor {k!r} is not in the image")
        out[k] = FinTensor({lab: c for lab, c in combo.items()}, legs)
    return out


def solve_system(equations: Iterable[Tuple[Dict[Hashable, Scalar], Scalar]],
                 unknowns: Sequence[Hashable]) -> Tuple[Optional[Dict[Hashable, Scalar]], List[Hashable]]:
    """Solve sparse linear equations ``sum coef[u]*u = rhs`` exactly.

    Returns ``(solution, free)``: ``solution`` is ``None`` if the system is
    inconsistent; ``free`` lists unknowns left undetermined (set to zero).
    """
    rhs_key = ("__rhs__",)
    ech = Echelon(order=lambda k: (1,) if k == rhs_key else (0, sort_key(k)))
    for n, (coef, rhs) in enumerate(equations):
        row = {("u", u): c for u, c in coef.items() if c}
        if rhs:
            row[rhs_key] = -rhs
        if not row:
            continue
        ech.add(row, n)
    sol: Dict[Hashable, Scalar] = {u: 0 for u in unknowns}
    for pivot, (row, _) in ech.rows.items():
        if pivot == rhs_key:
            return None, []
        sol[pivot[1]] = -row.get(rhs_key, 0)
    pivots = {p[1] for p in ech.rows if p != rhs_key}
    free = [u for u in unknowns if u not in pivots]
    return sol, free
