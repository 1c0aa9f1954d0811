"""Finitely supported linear combinations over a countable basis.

A :class:`FinTensor` with ``legs == n`` is an element of the n-fold tensor
power of a space with an opaque, hashable basis.  Keys are always tuples of
length ``legs``; ``FinVec`` is the one-leg case.  Zero coefficients are never
stored, so equality of tensors is equality of their term dictionaries.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, Tuple

from .scalars import Scalar, conj, scalar_str

Key = Tuple[Hashable, ...]


class FinTensor:
    __slots__ = ("terms", "legs")

    def __init__(self, terms: Dict[Key, Scalar] | None = None, legs: int = 1):
        if terms:
            self.terms = {k: c for k, c in terms.items() if c}
        else:
            self.terms = {}
        self.legs = legs

    @classmethod
    def _raw(cls, terms, legs):
        # trusted constructor: ``terms`` already pruned
        t = object.__new__(cls)
        t.terms = terms
        t.legs = legs
        return t

    @classmethod
    def basis(cls, *keys, coeff: Scalar = 1) -> "FinTensor":
        if not coeff:
            return cls._raw({}, len(keys))
        return cls._raw({tuple(keys): coeff}, len(keys))

    @classmethod
    def zero(cls, legs: int = 1) -> "FinTensor":
        return cls._raw({}, legs)

    @classmethod
    def sum(cls, items: Iterable["FinTensor"], legs: int) -> "FinTensor":
        acc: Dict[Key, Scalar] = {}
        for t in items:
            _iadd(acc, t.terms, 1)
        return cls._raw(_prune(acc), legs)

    # -- vector space -----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def support(self):
        return set(self.terms)

    def coeff(self, *key) -> Scalar:
        return self.terms.get(tuple(key), 0)

    def _check(self, other):
        if self.legs != other.legs:
            raise ValueError(f"leg mismatch: {self.legs} vs {other.legs}")

    def __add__(self, other: "FinTensor") -> "FinTensor":
        self._check(other)
        acc = dict(self.terms)
        _iadd(acc, other.terms, 1)
        return FinTensor._raw(_prune(acc), self.legs)

    def __sub__(self, other: "FinTensor") -> "FinTensor":
        self._check(other)
        acc = dict(self.terms)
        _iadd(acc, other.terms, -1)
        return FinTensor._raw(_prune(acc), self.legs)

    def __neg__(self):
        return FinTensor._raw({k: -c for k, c in self.terms.items()}, self.legs)

    def scale(self, s: Scalar) -> "FinTensor":
        if not s:
            return FinTensor._raw({}, self.legs)
        return FinTensor._raw({k: s * c for k, c in self.terms.items()}, self.legs)

    def __rmul__(self, s: Scalar):
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, FinTensor):
            return NotImplemented
        return self.legs == other.legs and self.terms == other.terms

    def __hash__(self):
        return hash((self.legs, frozenset(self.terms.items())))

    # -- tensor plumbing --------------------------------------------------

    def tensor(self, other: "FinTensor") -> "FinTensor":
        """Outer product ``self ⊗ other``."""
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = c1 * c2
        return FinTensor._raw(out, self.legs + other.legs)

    def permute(self, order: Tuple[int, ...]) -> "FinTensor":
        """Reorder legs; new leg ``j`` is old leg ``order[j]``."""
        out = {tuple(k[i] for i in order): c for k, c in self.terms.items()}
        return FinTensor._raw(out, self.legs)

    def flip(self) -> "FinTensor":
        if self.legs != 2:
            raise ValueError("flip needs a two-leg tensor")
        return FinTensor._raw({(k[1], k[0]): c for k, c in self.terms.items()}, 2)

    def apply(self, start: int, arity: int, kernel: Callable[..., "FinTensor"],
              out_legs: int | None = None) -> "FinTensor":
        """Apply ``kernel`` (basis keys -> tensor) to legs ``start:start+arity``.

        ``kernel`` receives ``arity`` basis keys and returns a tensor whose
        leg count replaces those legs; pass ``out_legs`` to fix the result
        leg count when every term might vanish.
        """
        if start < 0 or start + arity > self.legs:
            raise ValueError(f"cannot apply arity-{arity} kernel at leg {start} of {self.legs}")
        end = start + arity
        acc: Dict[Key, Scalar] = {}
        width = out_legs
        for k, c in self.terms.items():
            img = kernel(*k[start:end])
            if width is None:
                width = img.legs
            if not img.terms:
                continue
            pre, post = k[:start], k[end:]
            for ik, ic in img.terms.items():
                nk = pre + ik + post
                v = acc.get(nk, 0) + c * ic
                acc[nk] = v
        if width is None:
            width = arity
        return FinTensor._raw(_prune(acc), self.legs - arity + width)

    def contract(self, leg: int, functional: Callable[[Hashable], Scalar]) -> "FinTensor":
        """Apply a scalar-valued functional to one leg, removing it."""
        acc: Dict[Key, Scalar] = {}
        for k, c in self.terms.items():
            s = functional(k[leg])
            if not s:
                continue
            nk = k[:leg] + k[leg + 1:]
            acc[nk] = acc.get(nk, 0) + c * s
        return FinTensor._raw(_prune(acc), self.legs - 1)

    def conjugate_map(self, leg_map: Callable[..., "FinTensor"]) -> "FinTensor":
        """Conjugate-linear extension of a basis map on all legs at once."""
        acc: Dict[Key, Scalar] = {}
        for k, c in self.terms.items():
            img = leg_map(*k)
            cc = conj(c)
            for ik, ic in img.terms.items():
                acc[ik] = acc.get(ik, 0) + cc * ic
        return FinTensor._raw(_prune(acc), self.legs)

    # -- serialization ------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: sort_key(kc[0]))

    def canonical(self) -> str:
        """Sorted ``key=p/q`` terms joined by ``; `` (``0`` when empty)."""
        if not self.terms:
            return "0"
        return "; ".join(f"{key_str(k)}={scalar_str(c)}" for k, c in self.sorted_terms())

    def __repr__(self):
        return f"FinTensor[{self.legs}]({self.canonical()})"


def _iadd(acc, terms, sign):
    for k, c in terms.items():
        acc[k] = acc.get(k, 0) + (c if sign == 1 else -c)


def _prune(acc):
    return {k: c for k, c in acc.items() if c}


def sort_key(key):
    """Total order on heterogeneous keys (ints, strings, nested tuples)."""
    if isinstance(key, tuple):
        return (2, tuple(sort_key(k) for k in key))
    if isinstance(key, bool):
        return (0, int(key), "")
    if isinstance(key, int):
        return (0, key, "")
    return (1, 0, str(key))


def key_str(key) -> str:
    if isinstance(key, tuple):
        return "(" + ",".join(key_str(k) for k in key) + ")"
    return repr(key)


def FinVec(terms: Dict[Hashable, Scalar] | None = None) -> FinTensor:
    """One-leg tensor from a ``basis element -> coefficient`` mapping."""
    return FinTensor({(g,): c for g, c in (terms or {}).items()}, 1)


def delta(g, coeff: Scalar = 1) -> FinTensor:
    return FinTensor.basis(g, coeff=coeff)

