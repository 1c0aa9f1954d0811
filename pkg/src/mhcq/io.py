"""Structure and instance files (JSON) and report writers.

Structure file::

    {"format": "mhcq-structure/1", "name": "k(L10)",
     "algebra": "function-algebra",          # or group-algebra, explicit
     "loop": "steiner:ag23",                 # see resolve_loop
     "scalars": "rationals", "radius": 3, "star": true}

Explicit structures list the basis and tensors as ``[key, "p/q"]`` pairs::

    {"algebra": "explicit", "basis": [0, 1],
     "products": [[a, b, [[c, "1"]]], ...],
     "coproduct": [[a, [[[x, y], "1"], ...]], ...],     # or "kernels": {"T1": [[a, b, [...]]], ...}
     "counit": [[a, "1"], ...], "star": [[a, [[b, "1"]]], ...]}

Instance file::

    {"format": "mhcq-ydq/1", "structure": "../structures/l10.json",
     "variant": "LL", "module": "regular", "coaction": "diagonal",
     "bicomodule": "diagonal", "transports": "auto"}

``module`` may also be ``{"table": [[a, v, [[w, "1"]]], ...]}`` and ``coaction``
``{"explicit": [[v, [[[x, w], "1"], ...]], ...]}``; both then need ``"basis"``.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path
from typing import Dict, Hashable, List

from .coquasi import (
    CoquasiStructure,
    StructureError,
    function_algebra_structure,
    group_algebra_structure,
    loop_times_integers,
    structure_from_coproduct,
    structure_from_kernels,
)
from .exactalg import FinTensor, TableAlgebra, parse_scalar, scalar_str
from .loopcore import (
    LoopTableError,
    SteinerError,
    ag23_triples,
    cyclic_group,
    enumerate_loops,
    fano_triples,
    parse_loop_table,
    parse_triples,
    steiner_loop,
    symmetric_group,
)

STRUCTURE_FORMAT = "mhcq-structure/1"
INSTANCE_FORMAT = "mhcq-ydq/1"
REPORT_FORMAT = "mhcq-report/1"


class InputError(ValueError):
    """Unreadable or invalid input file."""


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


# -- loops ------------------------------------------------------------------------------

_BUILTIN_STS = {"ag23": ag23_triples, "fano": fano_triples}


def resolve_loop(source: str, base: Path | None = None):
    """Named loop sources.

    ``group:Zn``, ``group:Sk``, ``steiner:ag23|fano|<triples file>``,
    ``table:<loop table file>``, ``enum:<order>:<index>`` (enumeration order)
    and ``loopxz:<source>`` for the product with ℤ (a bare path is read as a
    table file).
    """
    try:
        return _resolve_loop(source, base)
    except (LoopTableError, SteinerError) as exc:
        raise InputError(f"loop source {source!r}: {exc}") from None


def _resolve_loop(source: str, base: Path | None = None):
    base = base or Path(".")
    kind, _, rest = source.partition(":")
    if not rest:
        raise InputError(f"loop source {source!r} needs the form kind:argument")
    if kind == "group":
        name = rest.upper()
        try:
            n = int(name[1:])
        except ValueError:
            raise InputError(f"unknown group {rest!r}") from None
        if name[0] == "Z" and n >= 1:
            return cyclic_group(n)
        if name[0] == "S" and n >= 1:
            return symmetric_group(n)
        raise InputError(f"unknown group {rest!r}")
    if kind == "steiner":
        if rest in _BUILTIN_STS:
            return steiner_loop(_BUILTIN_STS[rest]())
        return steiner_loop(parse_triples(_read_text(base / rest)))
    if kind == "table":
        return parse_loop_table(_read_text(base / rest))
    if kind == "enum":
        order, _, index = rest.partition(":")
        try:
            order_i, index_i = int(order), int(index)
        except ValueError:
            raise InputError(f"enum source needs order:index, got {rest!r}") from None
        for i, loop in enumerate(enumerate_loops(order_i)):
            if i == index_i:
                return loop
        raise InputError(f"no loop with index {index_i} of order {order_i}")
    if kind == "loopxz":
        if rest.partition(":")[0] in ("group", "steiner", "table", "enum"):
            inner = _resolve_loop(rest, base)
        else:
            inner = parse_loop_table(_read_text(base / rest))
        return ("loopxz", inner)
    raise InputError(f"unknown loop source kind {kind!r}")


# -- tensors in JSON -------------------------------------------------------------------

def _key(x) -> Hashable:
    return tuple(_key(v) for v in x) if isinstance(x, list) else x


def _json_key(k):
    return [_json_key(v) for v in k] if isinstance(k, tuple) else k


def parse_vector(items, legs: int = 1) -> FinTensor:
    terms: Dict[tuple, object] = {}
    for entry in items:
        k, c = entry
        key = _key(k)
        key = key if legs > 1 else (key,)
        if not isinstance(key, tuple) or len(key) != legs:
            raise InputError(f"tensor key {k!r} does not have {legs} legs")
        terms[key] = terms.get(key, 0) + parse_scalar(str(c))
    return FinTensor(terms, legs)


def dump_vector(t: FinTensor) -> list:
    out = []
    for k, c in t.sorted_terms():
        out.append([_json_key(k if t.legs > 1 else k[0]), scalar_str(c)])
    return out


# -- structures ------------------------------------------------------------------------------

def load_structure(source, base: Path | None = None) -> CoquasiStructure:
    """Build a structure from a path or an already-parsed dict."""
    if isinstance(source, dict):
        data = source
    else:
        path = Path(source)
        data = _read_json(path)
        base = path.parent
    base = base or Path(".")
    fmt = data.get("format", STRUCTURE_FORMAT)
    if fmt != STRUCTURE_FORMAT:
        raise InputError(f"unsupported structure format {fmt!r}")
    scalars = data.get("scalars", "rationals")
    if scalars not in ("rationals", "gaussian-rationals"):
        raise InputError(f"unknown scalar field {scalars!r}")
    kind = data.get("algebra", "function-algebra")
    name = data.get("name", "")
    star = bool(data.get("star", True))
    try:
        if kind in ("function-algebra", "group-algebra"):
            if "loop" not in data:
                raise InputError(f"{kind} structure needs a 'loop' source")
            loop = resolve_loop(data["loop"], base)
            if isinstance(loop, tuple):
                if kind != "function-algebra":
                    raise InputError("loopxz sources build function algebras only")
                s = loop_times_integers(loop[1], name=name, radius=int(data.get("radius", 3)))
                s.scalars = scalars
                if not star:
                    s.star = None
                return s
            if kind == "function-algebra":
                return function_algebra_structure(loop, name=name, star=star, scalars=scalars)
            return group_algebra_structure(loop, name=name, star=star, scalars=scalars)
        if kind == "explicit":
            return _explicit(data, name or "explicit", scalars)
    except StructureError as exc:
        raise InputError(str(exc)) from None
    raise InputError(f"unknown algebra kind {kind!r}")


def _explicit(data: dict, name: str, scalars: str) -> CoquasiStructure:
    try:
        basis = [_key(b) for b in data["basis"]]
        products = {(_key(a), _key(b)): parse_vector(v) for a, b, v in data["products"]}
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"explicit structure: bad basis/products ({exc})") from None
    alg = TableAlgebra(basis, products, name=name)
    counit = None
    if "counit" in data:
        counit = {_key(a): parse_scalar(str(c)) for a, c in data["counit"]}
    star = None
    if data.get("star"):
        star = {_key(a): parse_vector(v) for a, v in data["star"]}
    if "coproduct" in data:
        cop = {_key(a): parse_vector(v, 2) for a, v in data["coproduct"]}
        return structure_from_coproduct(alg, cop, counit, star, name, scalars)
    if "kernels" in data:
        ks = {n: {(_key(a), _key(b)): parse_vector(v, 2) for a, b, v in rows}
              for n, rows in data["kernels"].items()}
        if "T1" not in ks or "T2" not in ks:
            raise InputError("explicit kernels need at least T1 and T2")
        return structure_from_kernels(alg, ks["T1"], ks["T2"], ks.get("T3"), ks.get("T4"),
                                      counit, star, name, scalars)
    raise InputError("explicit structure needs 'coproduct' or 'kernels'")


# -- YDQ instances -----------------------------------------------------------------------------

def load_instance(path):
    """Returns ``(instance, options, structure_path)``."""
    from . import ydq

    path = Path(path)
    data = _read_json(path)
    if data.get("format", INSTANCE_FORMAT) != INSTANCE_FORMAT:
        raise InputError(f"unsupported instance format {data.get('format')!r}")
    src = data.get("structure")
    if src is None:
        raise InputError("instance file needs a 'structure'")
    spath = None
    if isinstance(src, str):
        spath = path.parent / src
        s = load_structure(spath)
    else:
        s = load_structure(src, path.parent)
    if not s.finite:
        raise InputError("YDQ instances need a finite-dimensional structure")
    variant = data.get("variant", "LL")
    if variant not in ydq.VARIANTS:
        raise InputError(f"unknown variant {variant!r}")
    mside = "left" if variant[0] == "L" else "right"
    cside = "left" if variant[1] == "L" else "right"
    module = data.get("module", "regular")
    coaction = data.get("coaction", "diagonal")
    basis = [_key(b) for b in data["basis"]] if "basis" in data else None
    try:
        if isinstance(module, str) and isinstance(coaction, str):
            m = ydq.make_instance(s, variant, module, coaction, basis, data.get("name", ""))
        else:
            if basis is None:
                if coaction == "diagonal" or module == "regular":
                    basis = s.window()
                else:
                    raise InputError("explicit modules/coactions need a 'basis'")
            if isinstance(module, dict):
                table = {(_key(x), _key(y)): parse_vector(v) for x, y, v in module["table"]}
                mod = ydq.explicit_module(basis, table, mside)
            elif module == "regular":
                mod = ydq.regular_module(s, mside, basis)
            else:
                mod = ydq.trivial_module(s, basis, mside)
            if isinstance(coaction, dict):
                gamma = {_key(v): parse_vector(t, 2) for v, t in coaction["explicit"]}
                co = ydq.explicit_coaction(s, gamma, cside)
            elif coaction == "diagonal":
                co = ydq.diagonal_coaction(s, cside)
            else:
                co = ydq.trivial_coaction(cside)
            m = ydq.YDQuasimodule(variant, s, mod, co, data.get("name", "explicit"))
    except ydq.YDQError as exc:
        raise InputError(str(exc)) from None
    options = {
        "transports": data.get("transports", "auto"),
        "bicomodule": data.get("bicomodule"),
    }
    return m, options, spath


# -- reports ----------------------------------------------------------------------------------

def write_report(report: dict, path) -> List[Path]:
    """Write the JSON report plus a TSV of leaf checks; returns written paths."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    tsv = path.with_suffix(".tsv")
    with tsv.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["group", "check", "status", "checked", "failures", "window", "witness", "lhs", "rhs"])
        for group in report.get("checks", []):
            for leaf in _leaves(group):
                w.writerow([group["name"], leaf["name"], leaf["status"], leaf["checked"], leaf["failures"],
                            leaf["window"], leaf["witness"] or "", leaf["lhs"], leaf["rhs"]])
    return [path, tsv]


def _leaves(d: dict):
    if not d.get("parts"):
        yield d
        return
    for p in d["parts"]:
        yield from _leaves(p)


def read_report(path) -> dict:
    return _read_json(path)
