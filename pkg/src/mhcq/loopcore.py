"""Finite loops, computable infinite loops, and small-order enumeration.

Finite loops are Latin squares on ``0..order-1`` with a two-sided identity.
Every example algebra in the package is built from one of these through the
division operations ``ldiv`` (``x\\y``: the ``z`` with ``x*z = y``) and
``rdiv`` (``x/y``: the ``z`` with ``z*y = x``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

MAX_ENUMERATION_ORDER = 6

# loops of order n up to isomorphism, n = 1..6
KNOWN_LOOP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 6, 6: 109}


class LoopTableError(ValueError):
    """Malformed or non-Latin multiplication table."""


class SteinerError(ValueError):
    """Triples do not form a Steiner triple system."""


@dataclass(frozen=True)
class LoopTable:
    order: int
    table: Tuple[Tuple[int, ...], ...]
    identity: int = 0
    labels: Optional[Tuple[Hashable, ...]] = None
    _ldiv: Tuple[Tuple[int, ...], ...] = field(default=(), repr=False, compare=False)
    _rdiv: Tuple[Tuple[int, ...], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        _check_latin(self.order, table, self.identity)
        n = self.order
        ld = [[0] * n for _ in range(n)]
        rd = [[0] * n for _ in range(n)]
        for x in range(n):
            for z in range(n):
                y = table[x][z]
                ld[x][y] = z      # x * z = y
                rd[y][z] = x      # x * z = y  =>  y / z = x
        object.__setattr__(self, "_ldiv", tuple(map(tuple, ld)))
        object.__setattr__(self, "_rdiv", tuple(map(tuple, rd)))
        if self.labels is not None and len(self.labels) != n:
            raise LoopTableError(f"{len(self.labels)} labels for order {n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], identity: int = 0, labels=None) -> "LoopTable":
        return cls(len(rows), tuple(tuple(r) for r in rows), identity, labels)

    # element operations
    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def ldiv(self, x: int, y: int) -> int:
        return self._ldiv[x][y]

    def rdiv(self, x: int, y: int) -> int:
        return self._rdiv[x][y]

    def elements(self) -> List[int]:
        return list(range(self.order))

    def window(self, radius: int | None = None) -> List[int]:
        return self.elements()

    @property
    def finite(self) -> bool:
        return True

    def right_inverse(self, x: int) -> int:
        return self.ldiv(x, self.identity)

    def left_inverse(self, x: int) -> int:
        return self.rdiv(self.identity, x)

    def label(self, x: int):
        return x if self.labels is None else self.labels[x]

    def index(self, label) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    def is_group(self) -> bool:
        return predicates(self).associative is True


class LoopOracle:
    """A loop given by computable operations on a countable element set.

    Subclasses implement ``mul``, ``ldiv``, ``rdiv``, ``identity`` and
    ``window(radius)``, which lists the finitely many elements of bounded
    support used by verification sweeps.
    """

    identity: Hashable
    finite = False

    def mul(self, x, y):
        raise NotImplementedError

    def ldiv(self, x, y):
        raise NotImplementedError

    def rdiv(self, x, y):
        raise NotImplementedError

    def window(self, radius: int) -> List[Hashable]:
        raise NotImplementedError

    def right_inverse(self, x):
        return self.ldiv(x, self.identity)

    def left_inverse(self, x):
        return self.rdiv(self.identity, x)


class ProductWithIntegers(LoopOracle):
    """The direct product ``L x Z`` of a finite loop with the integers.

    Elements are pairs ``(x, n)``; operations are componentwise.
    """

    def __init__(self, loop: LoopTable):
        self.loop = loop
        self.identity = (loop.identity, 0)

    def mul(self, x, y):
        return (self.loop.mul(x[0], y[0]), x[1] + y[1])

    def ldiv(self, x, y):
        return (self.loop.ldiv(x[0], y[0]), y[1] - x[1])

    def rdiv(self, x, y):
        return (self.loop.rdiv(x[0], y[0]), x[1] - y[1])

    def window(self, radius: int) -> List[Tuple[int, int]]:
        if radius < 0:
            raise ValueError("window radius must be nonnegative")
        return [(x, n) for n in range(-radius, radius + 1) for x in self.loop.elements()]

    def radius_of(self, x) -> int:
        return abs(x[1])

    def __repr__(self):
        return f"ProductWithIntegers(order={self.loop.order})"


def product_with_integers(loop: LoopTable) -> ProductWithIntegers:
    return ProductWithIntegers(loop)


def divisions(loop, g, h):
    """Return ``(g\\h, g/h)``: the ``x`` with ``g*x = h`` and the ``y`` with ``y*h = g``."""
    return loop.ldiv(g, h), loop.rdiv(g, h)


def _check_latin(n: int, table, identity: int) -> None:
    if n < 1:
        raise LoopTableError("order must be positive")
    if len(table) != n:
        raise LoopTableError(f"expected {n} rows, got {len(table)}")
    for i, row in enumerate(table):
        if len(row) != n:
            raise LoopTableError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise LoopTableError(f"entry ({i},{j}) = {v} out of range 0..{n - 1}")
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            raise LoopTableError(f"not a Latin square: row {i} repeats an entry")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise LoopTableError(f"not a Latin square: column {j} repeats an entry")
    if not 0 <= identity < n:
        raise LoopTableError(f"identity {identity} out of range")
    for x in range(n):
        if table[identity][x] != x or table[x][identity] != x:
            raise LoopTableError(f"{identity} is not a two-sided identity (fails at {x})")


# -- predicates -----------------------------------------------------------

@dataclass
class LoopPredicateReport:
    """Tri-state flags: True, False (with witness) or None (unknown on window)."""

    associative: Optional[bool]
    commutative: Optional[bool]
    inverse_property: Optional[bool]
    moufang: Optional[bool]
    witnesses: Dict[str, tuple] = field(default_factory=dict)
    window: Optional[int] = None

    def as_dict(self):
        return {
            "associative": self.associative,
            "commutative": self.commutative,
            "inverse_property": self.inverse_property,
            "moufang": self.moufang,
            "witnesses": {k: list(v) for k, v in sorted(self.witnesses.items())},
        }


def associativity_violation(loop, x, y, z) -> bool:
    return loop.mul(loop.mul(x, y), z) != loop.mul(x, loop.mul(y, z))


def ip_violation(loop, x, y) -> bool:
    inv = loop.right_inverse(x)
    if inv != loop.left_inverse(x):
        return True
    return loop.mul(inv, loop.mul(x, y)) != y or loop.mul(loop.mul(y, x), inv) != y


def moufang_violation(loop, x, y, z) -> bool:
    # z(x(zy)) = ((zx)z)y
    m = loop.mul
    return m(z, m(x, m(z, y))) != m(m(m(z, x), z), y)


def predicates(loop, radius: int = 1) -> LoopPredicateReport:
    """Scan a finite loop exhaustively, or an oracle loop on ``window(radius)``."""
    elems = loop.window(radius)
    exhaustive = loop.finite
    witnesses: Dict[str, tuple] = {}

    def first(name, pred, arity):
        for t in itertools.product(elems, repeat=arity):
            if pred(loop, *t):
                witnesses[name] = t
                return False
        return True if exhaustive else None

    comm = first("commutative", lambda L, x, y: L.mul(x, y) != L.mul(y, x), 2)
    assoc = first("associative", associativity_violation, 3)
    ip = first("inverse_property", ip_violation, 2)
    mouf = first("moufang", moufang_violation, 3)
    return LoopPredicateReport(assoc, comm, ip, mouf, witnesses, None if exhaustive else radius)


def validate_table(table) -> LoopPredicateReport:
    """Validate a loop table (raising :class:`LoopTableError`) and compute its flags."""
    if not isinstance(table, LoopTable):
        rows = [list(r) for r in table]
        table = LoopTable.from_rows(rows)
    return predicates(table)


# -- constructions --------------------------------------------------------

def steiner_loop(triples: Iterable[Iterable[Hashable]]) -> LoopTable:
    """Steiner loop of a Steiner triple system.

    Element 0 is the identity; points get indices ``1..v`` in sorted order and
    are recorded in ``labels``.  ``x*x = e`` and ``x*y`` is the third point of
    the block through ``x`` and ``y``.
    """
    blocks = [tuple(t) for t in triples]
    points = set()
    for b in blocks:
        if len(set(b)) != 3:
            raise SteinerError(f"block {b!r} does not have three distinct points")
        points.update(b)
    pts = sorted(points, key=_label_sort)
    third: Dict[frozenset, Hashable] = {}
    for b in blocks:
        for p, q, r in ((b[0], b[1], b[2]), (b[0], b[2], b[1]), (b[1], b[2], b[0])):
            pair = frozenset((p, q))
            if pair in third:
                raise SteinerError(f"pair {{{p!r}, {q!r}}} is covered more than once")
            third[pair] = r
    for p, q in itertools.combinations(pts, 2):
        if frozenset((p, q)) not in third:
            raise SteinerError(f"pair {{{p!r}, {q!r}}} is not covered")
    idx = {p: i + 1 for i, p in enumerate(pts)}
    n = len(pts) + 1
    rows = [[0] * n for _ in range(n)]
    for x in range(n):
        rows[0][x] = x
        rows[x][0] = x
    for p in pts:
        for q in pts:
            rows[idx[p]][idx[q]] = 0 if p == q else idx[third[frozenset((p, q))]]
    return LoopTable.from_rows(rows, 0, ("e",) + tuple(pts))


def _label_sort(p):
    return (0, p) if isinstance(p, int) else (1, p) if isinstance(p, tuple) else (2, str(p))


def ag23_triples() -> List[Tuple[Tuple[int, int], ...]]:
    """Lines of the affine plane AG(2,3): triples of points summing to zero mod 3."""
    pts = [(i, j) for i in range(3) for j in range(3)]
    lines = []
    for p, q, r in itertools.combinations(pts, 3):
        if (p[0] + q[0] + r[0]) % 3 == 0 and (p[1] + q[1] + r[1]) % 3 == 0:
            lines.append((p, q, r))
    return lines


def fano_triples() -> List[Tuple[int, int, int]]:
    return [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)]


def cyclic_group(n: int) -> LoopTable:
    return LoopTable.from_rows([[(i + j) % n for j in range(n)] for i in range(n)])


def symmetric_group(k: int = 3) -> LoopTable:
    """S_k on permutation tuples; index 0 is the identity permutation."""
    perms = sorted(itertools.permutations(range(k)))
    pos = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    rows = [[pos[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return LoopTable.from_rows(rows, 0, tuple(perms))


def steiner_l10() -> LoopTable:
    """The order-10 Steiner loop of AG(2,3)."""
    return steiner_loop(ag23_triples())


# -- enumeration ------------------------------------------------------------

def _normalized_latin_squares(n: int) -> Iterator[List[List[int]]]:
    rows = [[-1] * n for _ in range(n)]
    for i in range(n):
        rows[0][i] = i
        rows[i][0] = i
    row_used = [set([i]) for i in range(n)]
    col_used = [set([j]) for j in range(n)]
    row_used[0] = set(range(n))
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def fill(k):
        if k == len(cells):
            yield [r[:] for r in rows]
            return
        i, j = cells[k]
        for v in range(n):
            if v in row_used[i] or v in col_used[j]:
                continue
            rows[i][j] = v
            row_used[i].add(v)
            col_used[j].add(v)
            yield from fill(k + 1)
            row_used[i].discard(v)
            col_used[j].discard(v)
        rows[i][j] = -1

    yield from fill(0)


class _Canonizer:
    """Minimal relabelled table under identity-fixing permutations."""

    def __init__(self, n: int):
        self.n = n
        perms = [(0,) + p for p in itertools.permutations(range(1, n))]
        self.P = np.array(perms, dtype=np.int16).reshape(len(perms), n)
        self.Pinv = np.argsort(self.P, axis=1).astype(np.int16)
        self.rows = np.arange(len(perms))[:, None, None]

    def __call__(self, table) -> Tuple[int, ...]:
        T = np.asarray(table, dtype=np.int16)
        # relabelled[k][i][j] = P[k][ T[Pinv[k][i]][Pinv[k][j]] ]
        inner = T[self.Pinv[:, :, None], self.Pinv[:, None, :]]
        relabelled = self.P[self.rows, inner].reshape(len(self.P), -1)
        best = np.lexsort(relabelled.T[::-1])[0]
        return tuple(int(v) for v in relabelled[best])


def canonical_form(loop: LoopTable) -> Tuple[int, ...]:
    """Canonical row-major table of a loop with identity relabelled to 0."""
    if loop.identity != 0:
        swap = list(range(loop.order))
        swap[0], swap[loop.identity] = loop.identity, 0
        rows = [[swap[loop.table[swap[i]][swap[j]]] for j in range(loop.order)]
                for i in range(loop.order)]
    else:
        rows = loop.table
    return _Canonizer(loop.order)(rows)


def enumerate_loops(order: int, max_order: int = MAX_ENUMERATION_ORDER) -> Iterator[LoopTable]:
    """Yield one canonical representative per isomorphism class of loops."""
    if order < 1:
        raise ValueError("order must be at least 1")
    if order > max_order:
        raise ValueError(f"refusing to enumerate loops of order {order} (bound is {max_order})")
    canon = _Canonizer(order)
    seen = set()
    found = []
    for rows in _normalized_latin_squares(order):
        form = canon(rows)
        if form not in seen:
            seen.add(form)
            found.append(form)
    for form in sorted(found):
        rows = [form[i * order:(i + 1) * order] for i in range(order)]
        yield LoopTable.from_rows(rows, 0)


# -- text formats ---------------------------------------------------------------

def _content_lines(text: str) -> List[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_loop_table(text: str) -> LoopTable:
    """Parse ``order``, ``identity`` and ``order`` rows of integers."""
    lines = _content_lines(text)
    if len(lines) < 2:
        raise LoopTableError("loop file needs an order line and an identity line")
    try:
        order = int(lines[0])
        identity = int(lines[1])
        rows = [[int(v) for v in line.replace(",", " ").split()] for line in lines[2:]]
    except ValueError as exc:
        raise LoopTableError(f"non-integer token in loop file: {exc}") from None
    if len(rows) != order:
        raise LoopTableError(f"expected {order} table rows, got {len(rows)}")
    return LoopTable.from_rows(rows, identity)


def format_loop_table(loop: LoopTable) -> str:
    width = len(str(loop.order - 1))
    lines = [str(loop.order), str(loop.identity)]
    lines += [" ".join(str(v).rjust(width) for v in row) for row in loop.table]
    return "\n".join(lines) + "\n"


def parse_triples(text: str) -> List[Tuple[int, int, int]]:
    triples = []
    for n, line in enumerate(_content_lines(text), 1):
        vals = line.replace(",", " ").split()
        if len(vals) != 3:
            raise SteinerError(f"line {n}: expected three points, got {len(vals)}")
        triples.append(tuple(int(v) for v in vals))
    return triples
