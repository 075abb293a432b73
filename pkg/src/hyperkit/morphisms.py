"""Maps between finite canonical hypergroups and isomorphism search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .core import Diagnostic, FiniteCanonicalHypergroup, mask_of, members
from .order import OrderRelation


@dataclass(frozen=True)
class HypergroupMap:
    source: FiniteCanonicalHypergroup
    target: FiniteCanonicalHypergroup
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def image(self, mask: int) -> int:
        return mask_of(self.mapping[x] for x in members(mask))

    @property
    def bijective(self) -> bool:
        return self.source.n == self.target.n and len(set(self.mapping)) == self.source.n

    @property
    def homomorphism(self) -> bool:
        return is_homomorphism(self).ok

    @property
    def strong(self) -> bool:
        return is_strong_homomorphism(self).ok

    def order_preserving(self, src: OrderRelation, dst: OrderRelation) -> bool:
        return is_order_preserving(self, src, dst).ok


def _hom(m: HypergroupMap, strong: bool) -> Diagnostic:
    name = "strong homomorphism" if strong else "homomorphism"
    s, t = m.source, m.target
    if m.mapping[s.identity] != t.identity:
        return Diagnostic(name, False, (s.identity,), "identity not preserved")
    for a in range(s.n):
        for b in range(s.n):
            img = m.image(s.op(a, b))
            tgt = t.op(m.mapping[a], m.mapping[b])
            if (img != tgt) if strong else (img & ~tgt):
                return Diagnostic(name, False, (a, b),
                                  f"f(a*b) = {t.show(img)} vs f(a)*f(b) = {t.show(tgt)}")
    return Diagnostic(name, True)


def is_homomorphism(m: HypergroupMap) -> Diagnostic:
    return _hom(m, strong=False)


def is_strong_homomorphism(m: HypergroupMap) -> Diagnostic:
    return _hom(m, strong=True)


def is_order_preserving(m: HypergroupMap, src: OrderRelation, dst: OrderRelation) -> Diagnostic:
    n = m.source.n
    for a in range(n):
        for b in range(n):
            if src.leq[a][b] and not dst.leq[m.mapping[a]][m.mapping[b]]:
                return Diagnostic("order preserving", False, (a, b), "a<=b but f(a) > f(b)")
    return Diagnostic("order preserving", True)


def iter_isomorphisms(
    h1: FiniteCanonicalHypergroup,
    h2: FiniteCanonicalHypergroup,
    orders: tuple[OrderRelation, OrderRelation] | None = None,
    extra: Callable[[Sequence[int]], bool] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Backtracking over bijections fixing identities and commuting with inverses.

    With ``orders`` the bijection must also be an order isomorphism.  ``extra``
    is a final predicate on complete candidates (e.g. multiplication).
    """
    n = h1.n
    if n != h2.n:
        return
    f = [-1] * n
    used = [False] * n
    f[h1.identity] = h2.identity
    used[h2.identity] = True
    order = [h1.identity] + [x for x in range(n) if x != h1.identity]

    def consistent(upto: int) -> bool:
        assigned = order[: upto + 1]
        for a in assigned:
            ia = h1.inverse[a]
            if f[ia] != -1 and f[ia] != h2.inverse[f[a]]:
                return False
            if orders:
                for b in assigned:
                    if orders[0].leq[a][b] != orders[1].leq[f[a]][f[b]]:
                        return False
        # strong-homomorphism condition on pairs whose product lies in the assigned part
        for a in assigned:
            for b in assigned:
                prod = h1.op(a, b)
                if all(f[z] != -1 for z in members(prod)):
                    if mask_of(f[z] for z in members(prod)) != h2.op(f[a], f[b]):
                        return False
        return True

    def rec(i: int):
        if i == n:
            cand = tuple(f)
            if extra is None or extra(cand):
                yield cand
            return
        x = order[i]
        for y in range(n):
            if used[y]:
                continue
            f[x] = y
            used[y] = True
            if consistent(i):
                yield from rec(i + 1)
            f[x] = -1
            used[y] = False

    if consistent(0):
        yield from rec(1)


def find_isomorphism(h1, h2, order_preserving: bool = False, extra=None) -> HypergroupMap | None:
    """First isomorphism h1 -> h2, or None when the search is exhausted.

    Accepts plain or ordered hypergroups; ``order_preserving`` needs ordered ones.
    """
    orders = None
    if order_preserving:
        orders = (h1.order, h2.order)
    g1 = getattr(h1, "hypergroup", h1)
    g2 = getattr(h2, "hypergroup", h2)
    for cand in iter_isomorphisms(g1, g2, orders, extra):
        m = HypergroupMap(g1, g2, cand)
        # the search already enforces this; re-check independently
        if is_strong_homomorphism(m) and m.bijective:
            return m
    return None


def find_hyperfield_isomorphism(f1, f2, order_preserving: bool = False, orders=None) -> HypergroupMap | None:
    """Additive isomorphism that also respects multiplication."""
    def mul_ok(cand):
        return all(cand[f1.ring.mul[a][b]] == f2.ring.mul[cand[a]][cand[b]]
                   for a in range(f1.n) for b in range(f1.n))

    g1, g2 = f1.additive, f2.additive
    for cand in iter_isomorphisms(g1, g2, orders if order_preserving else None, mul_ok):
        if cand[f1.one] == f2.one:
            return HypergroupMap(g1, g2, cand)
    return None
