"""Hypervaluations of finite hyperfields onto ordered canonical hypergroups.

Convention for the extra value ∞ (the image of 0): it lies strictly above
every element of H, ``min(∞, a) = a``, and ``∞ * a = {∞}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import Diagnostic, embed_group, mask_of, members
from .hyperrings import (
    FiniteHyperfield,
    all_hyperideals,
    is_maximal,
    is_valuation_hyperring,
    units,
    verify_hyperideal,
)
from .morphisms import HypergroupMap, is_homomorphism, is_order_preserving
from .order import OrderRelation, OrderedCanonicalHypergroup
from .report import Report, check, from_diagnostic


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def require_total(h: OrderedCanonicalHypergroup) -> None:
    if not h.order.total:
        raise ValueError("hypervaluation codomain needs a total order (min must exist)")


def v_geq(h: OrderedCanonicalHypergroup, a, b) -> bool:
    if a is INF:
        return True
    if b is INF:
        return False
    return h.order.leq[b][a]


def v_gt(h, a, b) -> bool:
    return a != b and v_geq(h, a, b)


def v_min(h: OrderedCanonicalHypergroup, a, b):
    if a is INF:
        return b
    if b is INF:
        return a
    return h.order.minimum(a, b)


def v_star(h: OrderedCanonicalHypergroup, a, b) -> set:
    if a is INF or b is INF:
        return {INF}
    return set(members(h.hypergroup.op(a, b)))


@dataclass(frozen=True)
class FiniteHypervaluation:
    domain: FiniteHyperfield
    codomain: OrderedCanonicalHypergroup
    values: tuple

    def __call__(self, x: int):
        return self.values[x]

    def show(self) -> dict[str, str]:
        labs = self.codomain.hypergroup.labels
        return {self.domain.labels[x]: ("inf" if v is INF else labs[v]) for x, v in enumerate(self.values)}


def check_hypervaluation(w: FiniteHypervaluation) -> list[Diagnostic]:
    F, H = w.domain, w.codomain
    require_total(H)
    n, val = F.n, w.values
    out = []
    bad = next(((x,) for x in range(n) if (val[x] is INF) != (x == F.zero)), None)
    out.append(Diagnostic("V1 w(x)=inf iff x=0", bad is None, bad))
    bad = next(((x,) for x in range(n) if val[F.ring.neg(x)] != val[x]), None)
    out.append(Diagnostic("V2 w(-x)=w(x)", bad is None, bad))
    bad = next(((x, y) for x in range(n) for y in range(n)
                if val[F.ring.mul[x][y]] not in v_star(H, val[x], val[y])), None)
    out.append(Diagnostic("V3 w(xy) in w(x)*w(y)", bad is None, bad))
    bad = next(((x, y, z) for x in range(n) for y in range(n) for z in members(F.ring.add(x, y))
                if not v_geq(H, val[z], v_min(H, val[x], val[y]))), None)
    out.append(Diagnostic("V4 w(z) >= min", bad is None, bad))
    hit = {v for v in val if v is not INF}
    missing = [a for a in range(H.n) if a not in hit]
    out.append(Diagnostic("surjective", not missing, tuple(missing) or None))
    return out


def check_valpro(w: FiniteHypervaluation) -> list[Diagnostic]:
    F, H = w.domain, w.codomain
    e = H.hypergroup.identity
    out = [Diagnostic("w(1)=e", w(F.one) == e, None if w(F.one) == e else (F.one,))]
    bad = next(((x,) for x in F.nonzero() if w(F.inv(x)) != H.hypergroup.neg(w(x))), None)
    out.append(Diagnostic("w(x^-1)=w(x)^-1", bad is None, bad))
    return out


def valuation_ring(w: FiniteHypervaluation) -> int:
    e = w.codomain.hypergroup.identity
    return mask_of(x for x, v in enumerate(w.values) if v_geq(w.codomain, v, e))


def unit_group(w: FiniteHypervaluation) -> int:
    e = w.codomain.hypergroup.identity
    return mask_of(x for x, v in enumerate(w.values) if v == e)


def maximal_ideal(w: FiniteHypervaluation) -> int:
    e = w.codomain.hypergroup.identity
    return mask_of(x for x, v in enumerate(w.values) if v_gt(w.codomain, v, e))


def check_prop(w: FiniteHypervaluation) -> list[Diagnostic]:
    """Valuation hyperring, its units, its unique maximal hyperideal, the value group."""
    F = w.domain
    o, u, m = valuation_ring(w), unit_group(w), maximal_ideal(w)
    out = [is_valuation_hyperring(F, o)]
    out.append(Diagnostic("U_w = units(O_w)", units(F, within=o) == u))
    closed = all(u >> F.ring.mul[a][b] & 1 and u >> F.inv(a) & 1 for a in members(u) for b in members(u))
    out.append(Diagnostic("U_w group", closed and bool(u >> F.one & 1)))
    out.append(Diagnostic("m_w = O_w \\ U_w", m == o & ~u))
    out.append(Diagnostic("m_w hyperideal of O_w", all(verify_hyperideal(F, m, within=o))))
    out.append(is_maximal(F, m, within=o))
    others = [j for j in all_hyperideals(F, within=o) if j != o and j & ~m]
    out.append(Diagnostic("m_w unique maximal", not others, (others[0],) if others else None))
    vg = value_group(w)
    out.extend(vg.diagnostics)
    return out


@dataclass(frozen=True)
class ValueGroupPresentation:
    """F*/U_w: cosets as masks, coset product table, order xU <= yU iff yx^-1 in O_w."""

    cosets: tuple[int, ...]
    coset_of: dict
    mul: tuple[tuple[int, ...], ...]
    leq: tuple[tuple[bool, ...], ...]
    identity: int
    diagnostics: tuple[Diagnostic, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.cosets)

    def ordered(self) -> OrderedCanonicalHypergroup:
        labels = [f"c{i}" for i in range(self.n)]
        g = embed_group(self.mul, self.identity, labels)
        return OrderedCanonicalHypergroup(g, OrderRelation(self.leq))


def value_group(w: FiniteHypervaluation) -> ValueGroupPresentation:
    F = w.domain
    u, o = unit_group(w), valuation_ring(w)
    cosets, coset_of = [], {}
    for x in F.nonzero():
        if x in coset_of:
            continue
        c = mask_of(F.ring.mul[x][y] for y in members(u))
        for y in members(c):
            coset_of[y] = len(cosets)
        cosets.append(c)
    reps = [members(c)[0] for c in cosets]
    k = len(cosets)
    mul = tuple(tuple(coset_of[F.ring.mul[reps[i]][reps[j]]] for j in range(k)) for i in range(k))
    leq = tuple(tuple(bool(o >> F.ring.mul[reps[j]][F.inv(reps[i])] & 1) for j in range(k)) for i in range(k))
    diags = []
    well = all(coset_of[F.ring.mul[a][b]] == mul[coset_of[a]][coset_of[b]]
               for a in F.nonzero() for b in F.nonzero())
    diags.append(Diagnostic("G product well defined", well))
    lwell = all(leq[coset_of[a]][coset_of[b]] == bool(o >> F.ring.mul[b][F.inv(a)] & 1)
                for a in F.nonzero() for b in F.nonzero())
    diags.append(Diagnostic("G order well defined", lwell))
    try:
        rel = OrderRelation(leq)
        pair = next(((reps[i], reps[j]) for i in range(k) for j in range(k) if not (leq[i][j] or leq[j][i])), None)
        diags.append(Diagnostic("G linear order", rel.total, pair, "" if pair is None else "incomparable cosets"))
    except ValueError as exc:
        diags.append(Diagnostic("G linear order", False, None, str(exc)))
    compat = all(leq[mul[a][c]][mul[b][c]] for a in range(k) for b in range(k) if leq[a][b] for c in range(k))
    diags.append(Diagnostic("G order compatible with product", compat))
    return ValueGroupPresentation(tuple(cosets), coset_of, mul, leq, coset_of[F.one], tuple(diags))


class DecompositionError(AssertionError):
    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Decomposition:
    v: FiniteHypervaluation
    h: HypergroupMap
    group: ValueGroupPresentation
    report: Report


def decompose(w: FiniteHypervaluation) -> Decomposition:
    """w = h∘v with v onto the value group F*/U_w and h(xU_w) = w(x); O_v = O_w."""
    F, H = w.domain, w.codomain
    rep = Report("decomposition w = h∘v")
    for d in check_hypervaluation(w) + check_valpro(w):
        rep.add(from_diagnostic(d, F.labels, "w: "))
    G = value_group(w)
    for d in G.diagnostics:
        rep.add(from_diagnostic(d))
    GO = G.ordered()
    vvals = tuple(INF if x == F.zero else G.coset_of[x] for x in range(F.n))
    v = FiniteHypervaluation(F, GO, vvals)
    if GO.order.total:
        for d in check_hypervaluation(v):
            rep.add(from_diagnostic(d, F.labels, "v: "))
    else:
        # no min in G, so v cannot be a hypervaluation onto it
        rep.add(check("v: codomain linearly ordered", False))

    hmap = []
    well = True
    for c in G.cosets:
        vals = {w(x) for x in members(c)}
        well &= len(vals) == 1
        hmap.append(min(vals))
    rep.add(check("h well defined", well))
    hm = HypergroupMap(GO.hypergroup, H.hypergroup, tuple(hmap))
    rep.add(from_diagnostic(is_homomorphism(hm), prefix="h: "))
    rep.add(from_diagnostic(is_order_preserving(hm, GO.order, H.order), prefix="h: "))
    comp = all((hmap[v(x)] if v(x) is not INF else INF) == w(x) for x in range(F.n))
    rep.add(check("w = h∘v", comp))
    rep.add(check("O_v = O_w", valuation_ring(v) == valuation_ring(w)))
    rep.summary = {"value_group_order": G.n, "h": hmap}
    if not rep.ok:
        failed = [c.name for c in rep.checks if not c.ok]
        raise DecompositionError(f"decomposition postconditions failed: {failed}", rep)
    return Decomposition(v, hm, G, rep)


def trivial_hypervaluation(F: FiniteHyperfield, H: OrderedCanonicalHypergroup) -> FiniteHypervaluation:
    e = H.hypergroup.identity
    return FiniteHypervaluation(F, H, tuple(INF if x == F.zero else e for x in range(F.n)))


def hypervaluation_from_labels(F, H, assignment: dict[str, str]) -> FiniteHypervaluation:
    labs = H.hypergroup.labels
    vals = []
    for lab in F.labels:
        t = assignment[lab]
        vals.append(INF if t in ("inf", "∞") else labs.index(t))
    return FiniteHypervaluation(F, H, tuple(vals))


def relabel_hypervaluation(w: FiniteHypervaluation, pf: Sequence[int], ph: Sequence[int]) -> FiniteHypervaluation:
    """Conjugate w by carrier permutations of its domain and codomain."""
    from .hyperrings import relabel_hyperfield

    F2 = relabel_hyperfield(w.domain, pf)
    H = w.codomain
    h2 = H.hypergroup.relabel(ph)
    n = H.n
    leq = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            leq[ph[a]][ph[b]] = H.order.leq[a][b]
    H2 = OrderedCanonicalHypergroup(h2, OrderRelation(tuple(map(tuple, leq))))
    vals = [None] * w.domain.n
    for x, v in enumerate(w.values):
        vals[pf[x]] = INF if v is INF else ph[v]
    return FiniteHypervaluation(F2, H2, tuple(vals))
