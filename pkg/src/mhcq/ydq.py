"""Quasi-coactions, Yetter-Drinfeld quasimodules and the functors between them.

Coactions land in completed modules, so they are stored through their damped
kernels only:

* left coaction:  ``rho(a, v) = (a⊗1)Γ(v)``  and ``lam(v, a) = Γ(v)(a⊗1)`` in A⊗V,
* right coaction: ``rho(v, a) = Γ(v)(1⊗a)``  and ``lam(a, v) = (1⊗a)Γ(v)`` in V⊗A.

Each compatibility identity is rewritten so that every Sweedler leg is
multiplied by an honest algebra element; the rewriting used for each family
is described next to its evaluator.  Module elements are decomposed as
``v = Σ c_j·v_j`` (possible because modules are unital) whenever a leg of Δ
would otherwise be left undamped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Sequence, Tuple

from .coquasi import Antipode, CoquasiStructure, build_antipode
from .exactalg import Echelon, FinTensor, KernelMap, delta
from .mult import CompletedElement, LegBimodule, completed_module_check
from .sweep import Identity, VerificationReport, combine, not_applicable, run

VARIANTS = ("LL", "RL", "LR", "RR")


class YDQError(ValueError):
    pass


# -- data ----------------------------------------------------------------------------

@dataclass
class UnitalModule:
    """``side='left'``: act(a, v) = a·v; ``side='right'``: act(v, a) = v·a."""

    side: str
    basis: List[Hashable]
    act: KernelMap
    name: str = "V"


@dataclass
class QuasiCoaction:
    """Damped kernels of a left or right quasi-coaction (see module docstring)."""

    side: str
    rho: KernelMap
    lam: KernelMap
    name: str = "Γ"


@dataclass
class YDQuasimodule:
    variant: str
    structure: CoquasiStructure
    module: UnitalModule
    coaction: QuasiCoaction
    name: str = "V"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise YDQError(f"unknown variant {self.variant!r}")
        mside = "left" if self.variant[0] == "L" else "right"
        cside = "left" if self.variant[1] == "L" else "right"
        if self.module.side != mside or self.coaction.side != cside:
            raise YDQError(f"{self.variant} needs a {mside} module and a {cside} coaction")


def _k(fn, arity, out, name):
    return KernelMap(fn, arity, out, name)


# -- constructors -----------------------------------------------------------------------

def regular_module(s: CoquasiStructure, side: str = "left", window=None) -> UnitalModule:
    A = s.algebra
    basis = list(window) if window is not None else s.window()
    if side == "left":
        act = _k(lambda a, v: A.mul_basis(a, v), 2, 1, "a·v=av")
    else:
        act = _k(lambda v, a: A.mul_basis(v, a), 2, 1, "v·a=va")
    return UnitalModule(side, basis, act, "A")


def trivial_module(s: CoquasiStructure, basis: Sequence[Hashable], side: str = "left") -> UnitalModule:
    eps = s.counit
    if side == "left":
        act = _k(lambda a, v: delta(v, eps(a)), 2, 1, "a·v=ε(a)v")
    else:
        act = _k(lambda v, a: delta(v, eps(a)), 2, 1, "v·a=vε(a)")
    return UnitalModule(side, list(basis), act, "trivial")


def diagonal_coaction(s: CoquasiStructure, side: str = "left") -> QuasiCoaction:
    """Γ = Δ on V = A: the damped kernels are Galois maps."""
    if side == "left":
        return QuasiCoaction("left", s.T2, _need(s.T4, "T4"), "Δ")
    return QuasiCoaction("right", s.T1, _need(s.T3, "T3"), "Δ")


def _need(k, name):
    if k is None:
        raise YDQError(f"{name} kernel required")
    return k


def trivial_coaction(side: str = "left") -> QuasiCoaction:
    """Γ(v) = 1⊗v (left) or v⊗1 (right)."""
    if side == "left":
        return QuasiCoaction("left", _k(lambda a, v: FinTensor.basis(a, v), 2, 2, "a⊗v"),
                             _k(lambda v, a: FinTensor.basis(a, v), 2, 2, "a⊗v"), "trivial")
    return QuasiCoaction("right", _k(lambda v, a: FinTensor.basis(v, a), 2, 2, "v⊗a"),
                         _k(lambda a, v: FinTensor.basis(v, a), 2, 2, "v⊗a"), "trivial")


def explicit_coaction(s: CoquasiStructure, gamma: Dict[Hashable, FinTensor], side: str = "left") -> QuasiCoaction:
    """Coaction from honest values Γ(v) (finite-dimensional A only)."""
    A = s.algebra
    zero = FinTensor.zero(2)
    leg = 0 if side == "left" else 1
    if side == "left":
        rho = _k(lambda a, v: A.mul_leg_left(delta(a), gamma.get(v, zero), leg), 2, 2, "(a⊗1)Γ(v)")
        lam = _k(lambda v, a: A.mul_leg_right(gamma.get(v, zero), leg, delta(a)), 2, 2, "Γ(v)(a⊗1)")
    else:
        rho = _k(lambda v, a: A.mul_leg_right(gamma.get(v, zero), leg, delta(a)), 2, 2, "Γ(v)(1⊗a)")
        lam = _k(lambda a, v: A.mul_leg_left(delta(a), gamma.get(v, zero), leg), 2, 2, "(1⊗a)Γ(v)")
    return QuasiCoaction(side, rho, lam, "explicit")


def explicit_module(basis, table: Dict[tuple, FinTensor], side: str = "left") -> UnitalModule:
    zero = FinTensor.zero(1)
    return UnitalModule(side, list(basis), _k(lambda x, y: table.get((x, y), zero), 2, 1, "table"), "explicit")


def make_instance(s: CoquasiStructure, variant: str = "LL", module: str = "regular",
                  coaction: str = "diagonal", basis=None, name: str = "") -> YDQuasimodule:
    """Named constructors on V = A (or on ``basis`` for a trivial coaction).

    ``module``: ``regular`` (product) or ``trivial`` (counit);
    ``coaction``: ``diagonal`` (Δ) or ``trivial``.
    """
    mside = "left" if variant[0] == "L" else "right"
    cside = "left" if variant[1] == "L" else "right"
    if coaction == "diagonal":
        co = diagonal_coaction(s, cside)
        basis = s.window()
    elif coaction == "trivial":
        co = trivial_coaction(cside)
        basis = list(basis) if basis is not None else s.window()
    else:
        raise YDQError(f"unknown coaction constructor {coaction!r}")
    if module == "regular":
        mod = regular_module(s, mside, basis)
    elif module == "trivial":
        mod = trivial_module(s, basis, mside)
    else:
        raise YDQError(f"unknown module constructor {module!r}")
    return YDQuasimodule(variant, s, mod, co, name or f"{module}/{coaction}")


def diagonal_instance(s: CoquasiStructure, variant: str = "LL") -> YDQuasimodule:
    """V = A, action = product, coaction = Δ."""
    return make_instance(s, variant, "regular", "diagonal", name="diagonal")


def trivial_instance(s: CoquasiStructure, variant: str = "LL", basis=("v",)) -> YDQuasimodule:
    return make_instance(s, variant, "trivial", "trivial", basis, "trivial")


# -- evaluation context ----------------------------------------------------------------------

class _Ctx:
    def __init__(self, m: YDQuasimodule, window=None, workers=None, S: Antipode | None = None):
        self.m = m
        self.s = m.structure
        self.A = self.s.algebra
        self.W = list(window) if window is not None else self.s.window()
        self.V = list(m.module.basis)
        self.label = f"{len(self.W)} algebra x {len(self.V)} module basis elements"
        self.workers = workers
        self.S = S or build_antipode(self.s)
        self.Si = self.S.inverse()
        self.registry: Dict[str, Identity] = {}
        self._dec: Dict[Hashable, list] = {}

    def d(self, g):
        return FinTensor._raw({(g,): 1}, 1)

    def go(self, name, domains, fn, detail=""):
        ident = Identity(name, domains, fn, self.label, detail)
        self.registry[name] = ident
        return run(ident, self.workers)

    # module action on vectors / tensor legs
    def act(self, a, v) -> FinTensor:
        mod = self.m.module
        return mod.act.at(a, v) if mod.side == "left" else mod.act.at(v, a)

    def act_leg(self, t: FinTensor, a_leg: int, v_leg: int, keep: int) -> FinTensor:
        """Replace legs (a_leg, v_leg) of ``t`` by the vector a·v (or v·a),
        placed at position ``keep`` among the remaining legs."""
        acc: Dict[tuple, object] = {}
        for k, c in t.terms.items():
            rest = [x for i, x in enumerate(k) if i not in (a_leg, v_leg)]
            for (w,), e in self.act(k[a_leg], k[v_leg]).terms.items():
                nk = tuple(rest[:keep]) + (w,) + tuple(rest[keep:])
                acc[nk] = acc.get(nk, 0) + c * e
        return FinTensor(acc, t.legs - 1)

    def act_vec(self, a: FinTensor, v: FinTensor) -> FinTensor:
        acc: Dict[tuple, object] = {}
        for (g,), c in a.terms.items():
            for (w,), e in v.terms.items():
                for k, x in self.act(g, w).terms.items():
                    acc[k] = acc.get(k, 0) + c * e * x
        return FinTensor(acc, 1)

    # coaction kernels extended linearly
    def rho(self, x, y) -> FinTensor:
        co = self.m.coaction
        return _bilinear(co.rho.at, x, y)

    def lam(self, x, y) -> FinTensor:
        co = self.m.coaction
        return _bilinear(co.lam.at, x, y)

    def decompose(self, v) -> List[Tuple[Hashable, Hashable, object]]:
        """``v = Σ coeff·(c·w)`` (left) or ``Σ coeff·(w·c)`` (right)."""
        out = self._dec.get(v)
        if out is not None:
            return out
        u = self.A.unit()
        if u is not None:
            out = [(g, v, c) for (g,), c in u.sorted_terms()]
        else:
            ech = Echelon()
            for c in self.W:
                for w in self.V:
                    ech.add(self.act(c, w).terms, (c, w))
            combo = ech.express({(v,): 1})
            if combo is None:
                raise YDQError(f"module is not unital on the window: {v!r} is not in A·V")
            out = [(c, w, x) for (c, w), x in sorted(combo.items(), key=lambda kv: repr(kv[0]))]
        self._dec[v] = out
        return out


def _bilinear(at, x, y) -> FinTensor:
    xs = x.terms.items() if isinstance(x, FinTensor) else [((x,), 1)]
    ys = y.terms.items() if isinstance(y, FinTensor) else [((y,), 1)]
    acc: Dict[tuple, object] = {}
    legs = 2
    for (g,), c in xs:
        for (h,), e in ys:
            t = at(g, h)
            legs = t.legs
            for k, val in t.terms.items():
                acc[k] = acc.get(k, 0) + c * e * val
    return FinTensor(acc, legs)


def _ctx(m, window, workers, S=None):
    return m if isinstance(m, _Ctx) else _Ctx(m, window, workers, S)


# -- quasicomodule checks ------------------------------------------------------------------

def check_quasicomodule(m, window=None, workers=None, S=None) -> VerificationReport:
    c = _ctx(m, window, workers, S)
    s, A, S, Si = c.s, c.A, c.S, c.Si
    eps = s.counit
    side = c.m.coaction.side
    W, V = c.W, c.V
    if side == "left":
        def counit(a, v):
            return c.rho(a, v).contract(0, eps), delta(v, eps(a))

        def law_a(a, v):
            # a v(-1) S(v(0)(-1)) ⊗ v(0)(0): for x⊗w in (a⊗1)Γ(v),
            # xS(w(-1)) = S(w(-1)S⁻¹(x)) comes from Γ(w)(S⁻¹(x)⊗1)
            acc = FinTensor.zero(2)
            for (x, w), k in c.rho(a, v).terms.items():
                t = c.lam(w, Si.element(x)).apply(0, 1, S.element, 1)
                acc = acc + t.scale(k)
            return acc, FinTensor.basis(a, v)

        def law_b(a, v):
            # a S(v(-1)) v(0)(-1) ⊗ v(0)(0): aS(v(-1)) = S(v(-1)S⁻¹(a))
            acc = FinTensor.zero(2)
            for (y, w), k in c.lam(v, Si.element(a)).terms.items():
                acc = acc + c.rho(S.element(y), w).scale(k)
            return acc, FinTensor.basis(a, v)

        names = ("(ε⊗ι)((a⊗1)Γ(v)) = ε(a)v", "a v(-1)S(v(0)(-1)) ⊗ v(0)(0) = a⊗v",
                 "a S(v(-1))v(0)(-1) ⊗ v(0)(0) = a⊗v")
    else:
        def counit(a, v):
            return c.rho(v, a).contract(1, eps), delta(v, eps(a))

        def law_a(a, v):
            # v(0)(0) ⊗ v(0)(1)S(v(1))a: S(v(1))a = S(S⁻¹(a)v(1)) from (1⊗S⁻¹(a))Γ(v)
            acc = FinTensor.zero(2)
            for (w, z), k in c.lam(Si.element(a), v).apply(1, 1, S.element, 1).terms.items():
                acc = acc + c.rho(w, z).scale(k)
            return acc, FinTensor.basis(v, a)

        def law_b(a, v):
            # v(0)(0) ⊗ S(v(0)(1))v(1)a: for w⊗x in Γ(v)(1⊗a), S(w(1))x = S(S⁻¹(x)w(1))
            acc = FinTensor.zero(2)
            for (w, x), k in c.rho(v, a).terms.items():
                acc = acc + c.lam(Si.element(x), w).apply(1, 1, S.element, 1).scale(k)
            return acc, FinTensor.basis(v, a)

        names = ("(ι⊗ε)(Γ(v)(1⊗a)) = ε(a)v", "v(0)(0) ⊗ v(0)(1)S(v(1))a = v⊗a",
                 "v(0)(0) ⊗ S(v(0)(1))v(1)a = v⊗a")
    prefix = f"{side} quasicomodule: "
    parts = [c.go(prefix + names[0], [W, V], counit),
             c.go(prefix + names[1], [W, V], law_a),
             c.go(prefix + names[2], [W, V], law_b)]
    parts.append(check_coaction_completed(c))
    parts.append(check_coaction_injective(c))
    return combine(f"{side} quasicomodule", parts, c.label)


def check_coaction_completed(c: "_Ctx") -> VerificationReport:
    """Each Γ(v) is an element of the completed module M₀(A⊗V) (or M₀(V⊗A))."""
    side = c.m.coaction.side
    leg = 0 if side == "left" else 1
    X = LegBimodule(c.A, leg)
    reps = []
    for v in c.V:
        if side == "left":
            z = CompletedElement(lam=lambda a, v=v: c.lam(v, a), rho=lambda a, v=v: c.rho(a, v), module=X,
                                 name=f"Γ({v!r})")
        else:
            z = CompletedElement(lam=lambda a, v=v: c.rho(v, a), rho=lambda a, v=v: c.lam(a, v), module=X,
                                 name=f"Γ({v!r})")
        reps.append(completed_module_check(z, c.A, c.W, c.workers))
    rep = combine("coaction lands in the completed module", reps, c.label)
    # keep the report compact: one line per element is noise for large V
    rep.parts = [p for p in reps if p.passed is False][:1] or []
    return rep


def check_coaction_injective(c: "_Ctx") -> VerificationReport:
    ech = Echelon()
    side = c.m.coaction.side
    witness = None
    for v in c.V:
        vec = {}
        for a in c.W:
            t = c.rho(a, v) if side == "left" else c.rho(v, a)
            for k, x in t.terms.items():
                vec[(a,) + k] = x
        if not ech.add(vec, v):
            witness = v
            break
    rep = VerificationReport("Γ injective", witness is None, len(c.V), c.label)
    if witness is not None:
        rep.witness, rep.failures = (witness,), 1
        rep.lhs, rep.rhs = "Γ(v) dependent", "independent"
    return rep


def check_bicomodule_compat(left: QuasiCoaction, right: QuasiCoaction, s: CoquasiStructure,
                            basis: Sequence[Hashable], window=None, workers=None) -> VerificationReport:
    """a v(-1) ⊗ v(0)(0) ⊗ v(0)(1)b = a v(0)(-1) ⊗ v(0)(0) ⊗ v(1)b."""
    W = list(window) if window is not None else s.window()
    V = list(basis)

    def ev(a, v, b):
        lhs = FinTensor.zero(3)
        for (x, w), k in left.rho.at(a, v).terms.items():
            lhs = lhs + delta(x).tensor(right.rho.at(w, b)).scale(k)
        rhs = FinTensor.zero(3)
        for (w, y), k in right.rho.at(v, b).terms.items():
            rhs = rhs + left.rho.at(a, w).tensor(delta(y)).scale(k)
        return lhs, rhs

    label = f"{len(W)} algebra x {len(V)} module basis elements"
    rep = run(Identity("a v(-1) ⊗ v(0)(0) ⊗ v(0)(1)b = a v(0)(-1) ⊗ v(0)(0) ⊗ v(1)b", [W, V, W], ev, label),
              workers)
    return combine("two-sided quasicomodule compatibility", [rep], label)


# -- module checks --------------------------------------------------------------------------

def check_module(m, window=None, workers=None, S=None) -> VerificationReport:
    c = _ctx(m, window, workers, S)
    A, W, V = c.A, c.W, c.V
    side = c.m.module.side
    if side == "left":
        def assoc(b, a, v):
            return c.act_vec(c.d(b), c.act(a, v)), c.act_vec(A.mul_basis(b, a), c.d(v))
        name = "b·(a·v) = (ba)·v"
    else:
        def assoc(b, a, v):
            return _right_vec(c, c.act(b, v), c.d(a)), _right_vec(c, c.d(v), A.mul_basis(b, a))
        name = "(v·b)·a = v·(ba)"

    def unital(v):
        try:
            dec = c.decompose(v)
        except YDQError as exc:
            return str(exc), "unital"
        acc = FinTensor.zero(1)
        for g, w, x in dec:
            acc = acc + c.act(g, w).scale(x)
        return acc, c.d(v)

    parts = [c.go(f"{side} module: {name}", [W, W, V], assoc),
             c.go(f"{side} module: A·V = V", [V], unital)]
    return combine(f"{side} unital module", parts, c.label)


def _right_vec(c, v: FinTensor, a: FinTensor) -> FinTensor:
    acc: Dict[tuple, object] = {}
    for (w,), x in v.terms.items():
        for (g,), y in a.terms.items():
            for k, z in c.act(g, w).terms.items():
                acc[k] = acc.get(k, 0) + x * y * z
    return FinTensor(acc, 1)


# -- compatibility families ---------------------------------------------------------------------

def _family_LL(c: _Ctx):
    s, A, S = c.s, c.A, c.S
    T1, T2, T4, T1inv = s.T1, s.T2, _need(s.T4, "T4"), s.T1inv

    def ll1(a, v, b):
        # LHS: v = Σ c_j·v_j, Δ(a)(c_j⊗1) = T4(a⊗c_j) = Σ r⊗s;
        # term b(r·v_j)(-1) s ⊗ (r·v_j)(0) = ((b⊗1)Γ(r·v_j))(s⊗1)
        lhs = FinTensor.zero(2)
        for cj, vj, x in c.decompose(v):
            for (r, t), k in T4.at(a, cj).terms.items():
                w = c.act(r, vj)
                if w:
                    lhs = lhs + A.mul_leg_right(c.rho(b, w), 0, c.d(t)).scale(k * x)
        # RHS: (b⊗1)Δ(a) = T2(b⊗a) = Σ p⊗q; term (ι⊗q·)((p⊗1)Γ(v))
        rhs = FinTensor.zero(2)
        for (p, q), k in T2.at(b, a).terms.items():
            rhs = rhs + c.act_leg(c.rho(p, v).tensor(c.d(q)), 2, 1, 1).scale(k)
        return lhs, rhs

    def ll2(a, v, b):
        # legs (A acting on V, A, A); both sides are damped coassociativity
        lhs = FinTensor.zero(3)
        rhs = FinTensor.zero(3)
        t1 = T1.at(a, b)
        for cj, vj, x in c.decompose(v):
            l3 = T1.on_legs(T4.at(a, cj).tensor(c.d(b)), 1)
            lhs = lhs + c.act_leg(l3.tensor(c.d(vj)), 0, 3, 0).scale(x)
            r3 = t1.apply(0, 1, lambda y, cj=cj: T4.at(y, cj), 2)
            rhs = rhs + c.act_leg(r3.tensor(c.d(vj)), 0, 3, 0).scale(x)
        return lhs, rhs

    def ll3(a, v, b, x2):
        return _middle_leg(c, a, v, b, x2, left_module=True)

    def ll4(a, v, b, dd):
        # LHS: (b⊗1)Γ(a·v)(d⊗1)
        lhs = A.mul_leg_right(c.rho(b, c.act(a, v)), 0, c.d(dd))
        # RHS: T1⁻¹(a⊗d) = Σ p⊗q (q = S(a(2))d); T2(b⊗p) = Σ r⊗t;
        # r v(-1) q ⊗ t·v(0) = (r⊗1)·Γ(v)(q⊗1) with t acting on V
        rhs = FinTensor.zero(2)
        for (p, q), k in T1inv.at(a, dd).terms.items():
            for (r, t), k2 in T2.at(b, p).terms.items():
                g = A.mul_leg_left(c.d(r), c.lam(v, q), 0)
                rhs = rhs + c.act_leg(g.tensor(c.d(t)), 2, 1, 1).scale(k * k2)
        return lhs, rhs

    W, V = c.W, c.V
    return [
        ("1 b(a(1)·v)(-1)a(2) ⊗ (a(1)·v)(0) = b a(1)v(-1) ⊗ a(2)·v(0)", [W, V, W], ll1),
        ("2 a(1)·v ⊗ a(2)(1) ⊗ a(2)(2)b = a(1)(1)·v ⊗ a(1)(2) ⊗ a(2)b", [W, V, W], ll2),
        ("3 ba(1) ⊗ a(2)(1)·v ⊗ a(2)(2)c = ba(1)(1) ⊗ a(1)(2)·v ⊗ a(2)c", [W, V, W, W], ll3),
        ("4 b(a·v)(-1)d ⊗ (a·v)(0) = b a(1)(1)v(-1)S(a(2))d ⊗ a(1)(2)·v(0)", [W, V, W, W], ll4),
    ]


def _middle_leg(c: _Ctx, a, v, b, x2, left_module: bool):
    """b a(1) ⊗ a(2)(1)·v ⊗ a(2)(2)c = b a(1)(1) ⊗ a(1)(2)·v ⊗ a(2)c (module leg in the middle)."""
    s, A = c.s, c.A
    T1, T2, T4 = s.T1, s.T2, s.T4
    lhs = FinTensor.zero(3)
    rhs = FinTensor.zero(3)
    for cj, vj, x in c.decompose(v):
        for (p, q), k in T2.at(b, a).terms.items():
            if left_module:
                inner = A.mul_leg_right(T4.at(q, cj), 1, c.d(x2))        # q(1)c_j ⊗ q(2)c
            else:
                inner = A.mul_leg_right(T2.at(cj, q), 1, c.d(x2))        # c_j q(1) ⊗ q(2)c
            t = c.d(p).tensor(inner).tensor(c.d(vj))
            lhs = lhs + c.act_leg(t, 1, 3, 1).scale(k * x)
        for (y, z), k in T1.at(a, x2).terms.items():
            if left_module:
                inner = A.mul_leg_right(T2.at(b, y), 1, c.d(cj))          # b y(1) ⊗ y(2)c_j
            else:
                inner = A.mul_leg_left(c.d(cj), T2.at(b, y), 1)           # b y(1) ⊗ c_j y(2)
            t = inner.tensor(c.d(z)).tensor(c.d(vj))
            rhs = rhs + c.act_leg(t, 1, 3, 1).scale(k * x)
    return lhs, rhs


def _family_RL(c: _Ctx):
    s, A = c.s, c.A
    T1, T2, T3 = s.T1, s.T2, _need(s.T3, "T3")

    def rl1(a, v, b):
        # LHS: (1⊗b)Δ(a) = T3(b⊗a) = Σ p⊗q; term (q⊗1)Γ(v·p)
        lhs = FinTensor.zero(2)
        for (p, q), k in T3.at(b, a).terms.items():
            w = c.act(p, v)
            if w:
                lhs = lhs + c.rho(q, w).scale(k)
        # RHS: (b⊗1)Γ(v) = Σ x⊗w; (x⊗1)Δ(a) = T2(x⊗a) = Σ r⊗t; r ⊗ w·t
        rhs = FinTensor.zero(2)
        for (x, w), k in c.rho(b, v).terms.items():
            for (r, t), k2 in T2.at(x, a).terms.items():
                rhs = rhs + c.act_leg(FinTensor.basis(r, t, w), 1, 2, 1).scale(k * k2)
        return lhs, rhs

    def rl2(a, v, b):
        lhs = FinTensor.zero(3)
        rhs = FinTensor.zero(3)
        t1 = T1.at(a, b)
        for cj, vj, x in c.decompose(v):
            l3 = T1.on_legs(T2.at(cj, a).tensor(c.d(b)), 1)             # c_j a(1) ⊗ a(2)(1) ⊗ a(2)(2)b
            lhs = lhs + c.act_leg(l3.tensor(c.d(vj)), 0, 3, 0).scale(x)
            r3 = t1.apply(0, 1, lambda y, cj=cj: T2.at(cj, y), 2)        # c_j a(1)(1) ⊗ a(1)(2) ⊗ a(2)b
            rhs = rhs + c.act_leg(r3.tensor(c.d(vj)), 0, 3, 0).scale(x)
        return lhs, rhs

    def rl3(a, v, b, x2):
        return _middle_leg(c, a, v, b, x2, left_module=False)

    W, V = c.W, c.V
    return [
        ("1 b a(2)(v·a(1))(-1) ⊗ (v·a(1))(0) = b v(-1)a(1) ⊗ v(0)·a(2)", [W, V, W], rl1),
        ("2 v·a(1) ⊗ a(2)(1) ⊗ a(2)(2)b = v·a(1)(1) ⊗ a(1)(2) ⊗ a(2)b", [W, V, W], rl2),
        ("3 ba(1) ⊗ v·a(2)(1) ⊗ a(2)(2)c = ba(1)(1) ⊗ v·a(1)(2) ⊗ a(2)c", [W, V, W, W], rl3),
    ]


def _family_LR(c: _Ctx):
    s, A = c.s, c.A
    T1, T2, T4 = s.T1, s.T2, _need(s.T4, "T4")

    def lr1(a, v, b):
        # LHS: Δ(a)(b⊗1) = T4(a⊗b) = Σ p⊗q; term Γ(q·v)(1⊗p)
        lhs = FinTensor.zero(2)
        for (p, q), k in T4.at(a, b).terms.items():
            w = c.act(q, v)
            if w:
                lhs = lhs + c.rho(w, p).scale(k)
        # RHS: Γ(v)(1⊗b) = Σ w⊗y; Δ(a)(1⊗y) = T1(a⊗y) = Σ r⊗t; r·w ⊗ t
        rhs = FinTensor.zero(2)
        for (w, y), k in c.rho(v, b).terms.items():
            for (r, t), k2 in T1.at(a, y).terms.items():
                rhs = rhs + c.act_leg(FinTensor.basis(r, w, t), 0, 1, 0).scale(k * k2)
        return lhs, rhs

    def lr2(a, v, b):
        # b a(1) ⊗ a(2)(1) ⊗ a(2)(2)·v = b a(1)(1) ⊗ a(1)(2) ⊗ a(2)·v
        lhs = FinTensor.zero(3)
        rhs = FinTensor.zero(3)
        for cj, vj, x in c.decompose(v):
            l3 = T1.on_legs(T2.at(b, a).tensor(c.d(cj)), 1)             # b a(1) ⊗ a(2)(1) ⊗ a(2)(2)c_j
            lhs = lhs + c.act_leg(l3.tensor(c.d(vj)), 2, 3, 2).scale(x)
            r3 = T2.on_legs(c.d(b).tensor(T1.at(a, cj)), 0)             # b a(1)(1) ⊗ a(1)(2) ⊗ a(2)c_j
            rhs = rhs + c.act_leg(r3.tensor(c.d(vj)), 2, 3, 2).scale(x)
        return lhs, rhs

    def lr3(a, v, b, x2):
        return _middle_leg(c, a, v, b, x2, left_module=True)

    W, V = c.W, c.V
    return [
        ("1 (a(2)·v)(0) ⊗ (a(2)·v)(1)a(1)b = a(1)·v(0) ⊗ a(2)v(1)b", [W, V, W], lr1),
        ("2 ba(1) ⊗ a(2)(1) ⊗ a(2)(2)·v = ba(1)(1) ⊗ a(1)(2) ⊗ a(2)·v", [W, V, W], lr2),
        ("3 ba(1) ⊗ a(2)(1)·v ⊗ a(2)(2)c = ba(1)(1) ⊗ a(1)(2)·v ⊗ a(2)c", [W, V, W, W], lr3),
    ]


def _family_RR(c: _Ctx):
    s, A = c.s, c.A
    T2, T3 = s.T2, _need(s.T3, "T3")

    def rr1(a, v, b):
        # LHS: (b⊗1)Δ(a) = T2(b⊗a) = Σ p⊗q; term (1⊗p)Γ(v·q)
        lhs = FinTensor.zero(2)
        for (p, q), k in T2.at(b, a).terms.items():
            w = c.act(q, v)
            if w:
                lhs = lhs + c.lam(p, w).scale(k)
        # RHS: (1⊗b)Γ(v) = Σ w⊗y; (1⊗y)Δ(a) = T3(y⊗a) = Σ r⊗t; w·r ⊗ t
        rhs = FinTensor.zero(2)
        for (w, y), k in c.lam(b, v).terms.items():
            for (r, t), k2 in T3.at(y, a).terms.items():
                rhs = rhs + c.act_leg(FinTensor.basis(w, r, t), 1, 0, 0).scale(k * k2)
        return lhs, rhs

    def rr2(a, v, b):
        # b a(1) ⊗ a(2)(1) ⊗ v·a(2)(2) = b a(1)(1) ⊗ a(1)(2) ⊗ v·a(2)
        lhs = FinTensor.zero(3)
        rhs = FinTensor.zero(3)
        for cj, vj, x in c.decompose(v):
            l3 = T3.on_legs(T2.at(b, a).tensor(c.d(cj)).permute((0, 2, 1)), 1)  # b a(1) ⊗ a(2)(1) ⊗ c_j a(2)(2)
            lhs = lhs + c.act_leg(l3.tensor(c.d(vj)), 2, 3, 2).scale(x)
            r3 = T2.on_legs(c.d(b).tensor(T3.at(cj, a)), 0)             # b a(1)(1) ⊗ a(1)(2) ⊗ c_j a(2)
            rhs = rhs + c.act_leg(r3.tensor(c.d(vj)), 2, 3, 2).scale(x)
        return lhs, rhs

    def rr3(a, v, b, x2):
        return _middle_leg(c, a, v, b, x2, left_module=False)

    W, V = c.W, c.V
    return [
        ("1 (v·a(2))(0) ⊗ b a(1)(v·a(2))(1) = v(0)·a(1) ⊗ b v(1)a(2)", [W, V, W], rr1),
        ("2 ba(1) ⊗ a(2)(1) ⊗ v·a(2)(2) = ba(1)(1) ⊗ a(1)(2) ⊗ v·a(2)", [W, V, W], rr2),
        ("3 ba(1) ⊗ v·a(2)(1) ⊗ a(2)(2)c = ba(1)(1) ⊗ v·a(1)(2) ⊗ a(2)c", [W, V, W, W], rr3),
    ]


_FAMILIES = {"LL": _family_LL, "RL": _family_RL, "LR": _family_LR, "RR": _family_RR}


def check_ydq(m, window=None, workers=None, S=None) -> VerificationReport:
    """The compatibility family of the declared variant on all window tuples."""
    c = _ctx(m, window, workers, S)
    variant = c.m.variant
    parts = [c.go(f"{variant}-{name}", doms, fn) for name, doms, fn in _FAMILIES[variant](c)]
    if variant == "LL":
        first, fourth = parts[0], parts[3]
        agree = first.passed == fourth.passed
        cross = VerificationReport("LL-1 ⇔ LL-4 cross-check", agree, first.checked + fourth.checked, c.label,
                                   detail=f"LL-1 {first.status}, LL-4 {fourth.status}")
        if not agree:
            cross.failures = 1
            cross.witness = first.witness or fourth.witness
            cross.lhs, cross.rhs = f"LL-1 {first.status}", f"LL-4 {fourth.status}"
        parts.append(cross)
    return combine(f"{variant} compatibility", parts, c.label)


def check_instance(m: YDQuasimodule, window=None, workers=None) -> VerificationReport:
    c = _Ctx(m, window, workers)
    return combine(f"{m.variant} instance {m.name}",
                   [check_module(c), check_quasicomodule(c), check_ydq(c)], c.label)


# -- functors -------------------------------------------------------------------------------

def _apply_leg(t: FinTensor, leg: int, f) -> FinTensor:
    return t.apply(leg, 1, f, 1)


def left_to_right(co: QuasiCoaction, sigma, sigma_inv, name="") -> QuasiCoaction:
    """Γ_r(v) = v(0) ⊗ σ(v(-1)) for an antimultiplicative σ.

    Γ_r(v)(1⊗a) = v(0) ⊗ σ(σ⁻¹(a)v(-1)) and (1⊗a)Γ_r(v) = v(0) ⊗ σ(v(-1)σ⁻¹(a)).
    """
    def rho(v, a):
        return _apply_leg(_bilinear(co.rho.at, sigma_inv(a), v).flip(), 1, sigma)

    def lam(a, v):
        return _apply_leg(_bilinear(co.lam.at, v, sigma_inv(a)).flip(), 1, sigma)

    return QuasiCoaction("right", _k(rho, 2, 2, "ρ_r"), _k(lam, 2, 2, "λ_r"), name or co.name)


def right_to_left(co: QuasiCoaction, tau, tau_inv, name="") -> QuasiCoaction:
    """Γ_l(v) = τ(v(1)) ⊗ v(0) for an antimultiplicative τ."""
    def rho(a, v):
        return _apply_leg(_bilinear(co.rho.at, v, tau_inv(a)).flip(), 0, tau)

    def lam(v, a):
        return _apply_leg(_bilinear(co.lam.at, tau_inv(a), v).flip(), 0, tau)

    return QuasiCoaction("left", _k(rho, 2, 2, "ρ_l"), _k(lam, 2, 2, "λ_l"), name or co.name)


def twist_right(co: QuasiCoaction, mu, mu_inv, name="") -> QuasiCoaction:
    """Γ'(v) = (ι⊗μ)Γ(v) for a multiplicative automorphism μ."""
    def rho(v, a):
        return _apply_leg(_bilinear(co.rho.at, v, mu_inv(a)), 1, mu)

    def lam(a, v):
        return _apply_leg(_bilinear(co.lam.at, mu_inv(a), v), 1, mu)

    return QuasiCoaction("right", _k(rho, 2, 2, "ρ_r"), _k(lam, 2, 2, "λ_r"), name or co.name)


def _left_action_via(mod: UnitalModule, f) -> UnitalModule:
    """Right action v·a := f(a)·v from a left action."""
    return UnitalModule("right", mod.basis,
                        _k(lambda v, a: _bilinear(mod.act.at, f(a), v), 2, 1, "v·a"), mod.name)


def _right_action_via(mod: UnitalModule, f) -> UnitalModule:
    """Left action a·v := v·f(a) from a right action."""
    return UnitalModule("left", mod.basis,
                        _k(lambda a, v: _bilinear(mod.act.at, v, f(a)), 2, 1, "a·v"), mod.name)


@dataclass
class YDFunctor:
    source: str
    target: str
    action: Callable[[UnitalModule, Antipode], UnitalModule]
    coaction: Callable[[QuasiCoaction, Antipode], QuasiCoaction]
    description: str = ""


def _S(S):
    return S.element


def _Sinv(S):
    return S.inverse().element


def _S2(S):
    return lambda a: S.element(S.element(a))


def _Sinv2(S):
    Si = S.inverse()
    return lambda a: Si.element(Si.element(a))


FUNCTORS: Dict[Tuple[str, str], YDFunctor] = {
    ("LL", "RL"): YDFunctor("LL", "RL",
                            lambda mod, S: _left_action_via(mod, _Sinv(S)),
                            lambda co, S: co,
                            "v·a = S⁻¹(a)·v, coaction unchanged"),
    ("RL", "RR"): YDFunctor("RL", "RR",
                            lambda mod, S: mod,
                            lambda co, S: left_to_right(co, _S(S), _Sinv(S)),
                            "action unchanged, Γ_r(v) = v(0) ⊗ S(v(-1))"),
    ("RR", "LR"): YDFunctor("RR", "LR",
                            lambda mod, S: _right_action_via(mod, _S(S)),
                            lambda co, S: twist_right(co, _Sinv2(S), _S2(S)),
                            "a·v = v·S(a), Γ ↦ (ι⊗S⁻²)Γ"),
    ("LR", "LL"): YDFunctor("LR", "LL",
                            lambda mod, S: mod,
                            lambda co, S: right_to_left(co, _S(S), _Sinv(S)),
                            "action unchanged, Γ_l(v) = S(v(1)) ⊗ v(0)"),
    ("LL", "LR"): YDFunctor("LL", "LR",
                            lambda mod, S: mod,
                            lambda co, S: left_to_right(co, _Sinv(S), _S(S)),
                            "action unchanged, Γ_r(v) = v(0) ⊗ S⁻¹(v(-1))"),
    ("LL", "LL"): YDFunctor("LL", "LL", lambda mod, S: mod, lambda co, S: co, "identity"),
}
ROUND_TRIP = ("LL", "RL", "RR", "LR", "LL")


def apply_functor(f: YDFunctor, m: YDQuasimodule, S: Antipode | None = None) -> YDQuasimodule:
    if m.variant != f.source:
        raise YDQError(f"functor from {f.source} applied to a {m.variant} object")
    S = S or build_antipode(m.structure)
    return YDQuasimodule(f.target, m.structure, f.action(m.module, S), f.coaction(m.coaction, S),
                         f"{m.name}→{f.target}")


def functor(source: str, target: str) -> YDFunctor:
    try:
        return FUNCTORS[(source, target)]
    except KeyError:
        raise YDQError(f"no functor {source} → {target}") from None


def kernel_tables(m: YDQuasimodule, window=None) -> Dict[str, str]:
    """Canonical serialization of the action and coaction kernels on the window."""
    W = list(window) if window is not None else m.structure.window()
    out = {}
    mod, co = m.module, m.coaction
    for a in W:
        for v in mod.basis:
            if mod.side == "left":
                out[f"act({a!r},{v!r})"] = mod.act.at(a, v).canonical()
            else:
                out[f"act({v!r},{a!r})"] = mod.act.at(v, a).canonical()
            if co.side == "left":
                out[f"rho({a!r},{v!r})"] = co.rho.at(a, v).canonical()
                out[f"lam({v!r},{a!r})"] = co.lam.at(v, a).canonical()
            else:
                out[f"rho({v!r},{a!r})"] = co.rho.at(v, a).canonical()
                out[f"lam({a!r},{v!r})"] = co.lam.at(a, v).canonical()
    return out


def round_trip(m: YDQuasimodule, window=None, S=None) -> Tuple[YDQuasimodule, VerificationReport]:
    """LL → RL → RR → LR → LL and compare all kernels with the input."""
    S = S or build_antipode(m.structure)
    cur = m
    for src, tgt in zip(ROUND_TRIP, ROUND_TRIP[1:]):
        cur = apply_functor(functor(src, tgt), cur, S)
    before = kernel_tables(m, window)
    after = kernel_tables(cur, window)
    diff = [k for k in before if before[k] != after.get(k)]
    label = f"{len(before)} kernel entries"
    rep = VerificationReport("round trip LL→RL→RR→LR→LL reproduces kernels", not diff, len(before), label)
    if diff:
        rep.failures = len(diff)
        rep.witness = (diff[0],)
        rep.lhs, rep.rhs = after.get(diff[0], "missing"), before[diff[0]]
    return cur, rep


# -- morphisms -----------------------------------------------------------------------------

def direct_sum(m: YDQuasimodule, n: YDQuasimodule) -> YDQuasimodule:
    """V ⊕ W with basis keys (0, v) and (1, w)."""
    if m.variant != n.variant or m.structure is not n.structure:
        raise YDQError("direct sum needs two objects of one category")
    mod_side, co_side = m.module.side, m.coaction.side
    parts = (m, n)

    def tag(i, t: FinTensor, leg: int) -> FinTensor:
        return FinTensor._raw({k[:leg] + ((i, k[leg]),) + k[leg + 1:]: c for k, c in t.terms.items()}, t.legs)

    if mod_side == "left":
        act = _k(lambda a, v: tag(v[0], parts[v[0]].module.act.at(a, v[1]), 0), 2, 1, "⊕")
    else:
        act = _k(lambda v, a: tag(v[0], parts[v[0]].module.act.at(v[1], a), 0), 2, 1, "⊕")
    vleg = 1 if co_side == "left" else 0
    if co_side == "left":
        rho = _k(lambda a, v: tag(v[0], parts[v[0]].coaction.rho.at(a, v[1]), vleg), 2, 2, "⊕")
        lam = _k(lambda v, a: tag(v[0], parts[v[0]].coaction.lam.at(v[1], a), vleg), 2, 2, "⊕")
    else:
        rho = _k(lambda v, a: tag(v[0], parts[v[0]].coaction.rho.at(v[1], a), vleg), 2, 2, "⊕")
        lam = _k(lambda a, v: tag(v[0], parts[v[0]].coaction.lam.at(a, v[1]), vleg), 2, 2, "⊕")
    basis = [(0, v) for v in m.module.basis] + [(1, w) for w in n.module.basis]
    return YDQuasimodule(m.variant, m.structure, UnitalModule(mod_side, basis, act, "⊕"),
                         QuasiCoaction(co_side, rho, lam, "⊕"), f"{m.name}⊕{n.name}")


def inclusion(m: YDQuasimodule, index: int = 0) -> Dict[Hashable, FinTensor]:
    return {v: delta((index, v)) for v in m.module.basis}


def check_morphism(f: Dict[Hashable, FinTensor], src: YDQuasimodule, tgt: YDQuasimodule,
                   window=None, workers=None) -> VerificationReport:
    """f commutes with the actions and the coactions (damped kernels)."""
    W = list(window) if window is not None else src.structure.window()
    V = list(src.module.basis)
    smod, tmod = src.module, tgt.module
    sco, tco = src.coaction, tgt.coaction

    def fvec(x: FinTensor) -> FinTensor:
        return x.apply(0, 1, lambda v: f[v], 1)

    def f_leg(t: FinTensor, leg: int) -> FinTensor:
        return t.apply(leg, 1, lambda v: f[v], 1)

    def act_ok(a, v):
        if smod.side == "left":
            return fvec(smod.act.at(a, v)), _bilinear(tmod.act.at, delta(a), f[v])
        return fvec(smod.act.at(v, a)), _bilinear(tmod.act.at, f[v], delta(a))

    def co_ok(a, v):
        if sco.side == "left":
            return f_leg(sco.rho.at(a, v), 1), _bilinear(tco.rho.at, delta(a), f[v])
        return f_leg(sco.rho.at(v, a), 0), _bilinear(tco.rho.at, f[v], delta(a))

    label = f"{len(W)} algebra x {len(V)} module basis elements"
    parts = [run(Identity("f(a·v) = a·f(v)", [W, V], act_ok, label), workers),
             run(Identity("Γ′∘f = (ι⊗f)∘Γ (damped)", [W, V], co_ok, label), workers)]
    return combine(f"morphism {src.name} → {tgt.name} ({src.variant})", parts, label)


def transport_morphism(fn: YDFunctor, m: YDQuasimodule, S=None, window=None, workers=None) -> VerificationReport:
    """The inclusion m → m⊕m stays a morphism after applying ``fn``."""
    total = direct_sum(m, m)
    S = S or build_antipode(m.structure)
    src = apply_functor(fn, m, S)
    tgt = apply_functor(fn, total, S)
    return check_morphism(inclusion(m, 0), src, tgt, window, workers)


# -- the full YDQ campaign -----------------------------------------------------------------

@dataclass
class YDQResult:
    instance: YDQuasimodule
    reports: List[VerificationReport]
    transported: Dict[str, YDQuasimodule] = field(default_factory=dict)
    registry: Dict[str, Identity] = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return all(r.passed is not False for r in self.reports)


def run_ydq(m: YDQuasimodule, window=None, workers=None, transports: str = "auto",
            bicomodule: QuasiCoaction | None = None) -> YDQResult:
    """Module, quasicomodule and compatibility checks, then transports.

    ``transports='auto'`` transports only when the source passes its own
    family; ``'always'`` forces them, ``'never'`` skips them.
    """
    S = build_antipode(m.structure)
    c = _Ctx(m, window, workers, S)
    reports = [check_module(c), check_quasicomodule(c), check_ydq(c)]
    if bicomodule is not None:
        if m.coaction.side == "left":
            left, right = m.coaction, bicomodule
        else:
            left, right = bicomodule, m.coaction
        other_variant = m.variant[0] + ("R" if bicomodule.side == "right" else "L")
        other = YDQuasimodule(other_variant, m.structure, m.module, bicomodule, m.name)
        oc = _Ctx(other, window, workers, S)
        reports.append(check_quasicomodule(oc))
        c.registry.update(oc.registry)
        reports.append(check_bicomodule_compat(left, right, m.structure, m.module.basis, c.W, workers))
    registry = dict(c.registry)
    result = YDQResult(m, reports, registry=registry)
    source_ok = all(r.passed is not False for r in reports)
    do_transport = transports == "always" or (transports == "auto" and source_ok)
    if m.variant != "LL":
        reports.append(not_applicable("functor transports", "transports start from the LL variant"))
        return result
    if not do_transport:
        reports.append(not_applicable("functor transports",
                                      "skipped: the source object fails its own checks"))
        return result
    cur = m
    for src, tgt in zip(ROUND_TRIP, ROUND_TRIP[1:]):
        fn = functor(src, tgt)
        nxt = apply_functor(fn, cur, S)
        tc = _Ctx(nxt, window, workers, S)
        parts = [check_module(tc), check_quasicomodule(tc), check_ydq(tc),
                 transport_morphism(fn, cur, S, window, workers)]
        for name, ident in tc.registry.items():
            registry[f"{tgt}: {name}"] = ident
        reports.append(combine(f"transport {src}→{tgt} ({fn.description})", parts, tc.label))
        result.transported[tgt if tgt != "LL" else "LL(round trip)"] = nxt
        cur = nxt
    _, rt = round_trip(m, window, S)
    reports.append(rt)
    direct = apply_functor(functor("LL", "LR"), m, S)
    via = result.transported["LR"]
    same = kernel_tables(direct, window) == kernel_tables(via, window)
    reports.append(VerificationReport("direct LL→LR agrees with LL→RL→RR→LR", same, 1, "",
                                      failures=0 if same else 1))
    return result
