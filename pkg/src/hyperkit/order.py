"""Orders on canonical hypergroups, the domination relation and positive cones."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .core import Diagnostic, FiniteCanonicalHypergroup, full_mask, mask_of, members


@dataclass(frozen=True)
class OrderRelation:
    """Partial order stored as a full boolean matrix; ``leq[a][b]`` means a <= b."""

    leq: tuple[tuple[bool, ...], ...]
    total: bool = field(default=False)

    def __post_init__(self):
        n = len(self.leq)
        rng = range(n)
        for a in rng:
            if not self.leq[a][a]:
                raise ValueError(f"order not reflexive at {a}")
            for b in rng:
                if a != b and self.leq[a][b] and self.leq[b][a]:
                    raise ValueError(f"order not antisymmetric at {(a, b)}")
                for c in rng:
                    if self.leq[a][b] and self.leq[b][c] and not self.leq[a][c]:
                        raise ValueError(f"order not transitive at {(a, b, c)}")
        comparable = all(self.leq[a][b] or self.leq[b][a] for a in rng for b in rng)
        if self.total and not comparable:
            raise ValueError("order flagged total but has incomparable pairs")
        object.__setattr__(self, "total", comparable)

    @property
    def n(self) -> int:
        return len(self.leq)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq[a][b]

    def minimum(self, a: int, b: int) -> int:
        if self.leq[a][b]:
            return a
        if self.leq[b][a]:
            return b
        raise ValueError(f"elements {a} and {b} are incomparable")

    @classmethod
    def from_chain(cls, chain: Sequence[int], n: int | None = None) -> "OrderRelation":
        """Linear order listing elements from smallest to largest."""
        n = len(chain) if n is None else n
        return cls.from_chains([chain], n)

    @classmethod
    def from_chains(cls, chains, n: int) -> "OrderRelation":
        leq = [[a == b for b in range(n)] for a in range(n)]
        for chain in chains:
            for i, a in enumerate(chain):
                for b in chain[i + 1:]:
                    leq[a][b] = True
        for k in range(n):
            for a in range(n):
                if leq[a][k]:
                    for b in range(n):
                        if leq[k][b]:
                            leq[a][b] = True
        return cls(tuple(tuple(r) for r in leq))

    @classmethod
    def discrete(cls, n: int) -> "OrderRelation":
        return cls.from_chains([], n)

    def chain(self) -> list[int]:
        """Elements sorted ascending; only meaningful for total orders."""
        return sorted(range(self.n), key=lambda a: sum(self.leq[b][a] for b in range(self.n)))


@dataclass(frozen=True)
class OrderedCanonicalHypergroup:
    hypergroup: FiniteCanonicalHypergroup
    order: OrderRelation

    def __post_init__(self):
        if self.order.n != self.hypergroup.n:
            raise ValueError("order and hypergroup carriers differ")
        d = check_compatibility(self.hypergroup, self.order)
        if not d:
            raise ValueError(f"order not compatible: {d.details} at {d.witness}")

    @property
    def n(self) -> int:
        return self.hypergroup.n


def dominates(a_set: int, b_set: int, order: OrderRelation) -> bool:
    """A ↗ B: every b in B has some a in A with a <= b."""
    leq = order.leq
    la = members(a_set)
    return all(any(leq[a][b] for a in la) for b in members(b_set))


def check_compatibility(h: FiniteCanonicalHypergroup, order: OrderRelation) -> Diagnostic:
    n = h.n
    for a in range(n):
        for b in range(n):
            if not order.leq[a][b]:
                continue
            for c in range(n):
                if not dominates(h.op(a, c), h.op(b, c), order):
                    return Diagnostic(
                        "order compatibility", False, (a, b, c),
                        f"a<=b but a*c = {h.show(h.op(a, c))} does not dominate b*c = {h.show(h.op(b, c))}",
                    )
    return Diagnostic("order compatibility", True)


def check_fvk_properties(oh: OrderedCanonicalHypergroup) -> list[Diagnostic]:
    """Machine check of the four order lemmas; all must pass on valid input."""
    h, o = oh.hypergroup, oh.order
    n, e = h.n, h.identity
    leq = o.leq
    out = []

    # part 1: over every nonempty subset when affordable, else over table entries
    if n <= 12:
        subsets = range(1, full_mask(n) + 1)
    else:
        subsets = sorted({h.op(x, y) for x in range(n) for y in range(n)})
    bad = None
    for a in range(n):
        for bs in subsets:
            if dominates(1 << a, bs, o) and not all(leq[a][b] for b in members(bs)):
                bad = (a, bs)
                break
        if bad:
            break
    out.append(Diagnostic("lemma part 1", bad is None, bad, "" if bad is None else "{a} ↗ B but a ≰ b"))

    bad = next((x for x in range(n) if o.lt(e, x) and not o.lt(h.neg(x), e)), None)
    out.append(Diagnostic("lemma part 2", bad is None, None if bad is None else (bad,),
                          "" if bad is None else "x > e but not x^-1 < e"))

    bad3 = bad4 = None
    for x in range(n):
        for y in range(n):
            if not (leq[e][x] and leq[e][y]):
                continue
            for b in members(h.op(x, y)):
                if bad3 is None and not leq[e][b]:
                    bad3 = (x, y, b)
                if bad4 is None and x != e and not o.lt(e, b):
                    bad4 = (x, y, b)
    out.append(Diagnostic("lemma part 3", bad3 is None, bad3, "" if bad3 is None else "b < e for b in x*y"))
    out.append(Diagnostic("lemma part 4", bad4 is None, bad4, "" if bad4 is None else "b not > e for b in x*y"))
    return out


def verify_positive_cone(h: FiniteCanonicalHypergroup, p: int) -> list[Diagnostic]:
    neg = h.neg_set(p)
    e = 1 << h.identity
    inter = p & neg
    out = [Diagnostic("P1 P∩-P={e}", inter == e, None if inter == e else (inter,),
                      "" if inter == e else f"P∩-P = {h.show(inter)}")]
    bad = None
    for a, b in ((a, b) for a in members(p) for b in members(p)):
        if h.op(a, b) & ~p:
            bad = (a, b)
            break
    out.append(Diagnostic("P2 P*P⊆P", bad is None, bad, "" if bad is None else "a*b leaves P"))
    missing = h.carrier & ~(p | neg)
    out.append(Diagnostic("P3 P∪-P=H", not missing, (members(missing)[0],) if missing else None,
                          f"missing {h.show(missing)}" if missing else ""))
    return out


def is_positive_cone(h: FiniteCanonicalHypergroup, p: int) -> bool:
    return all(verify_positive_cone(h, p))


@dataclass(frozen=True)
class RelationReport:
    matrix: tuple[tuple[bool, ...], ...]
    reflexive: bool
    antisymmetric: bool
    transitive: bool
    total: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_order(self) -> bool:
        return self.reflexive and self.antisymmetric and self.transitive


def classify_relation(matrix) -> RelationReport:
    n = len(matrix)
    w = {}
    refl = next(((a,) for a in range(n) if not matrix[a][a]), None)
    anti = next(((a, b) for a, b in combinations(range(n), 2) if matrix[a][b] and matrix[b][a]), None)
    trans = next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                  if matrix[a][b] and matrix[b][c] and not matrix[a][c]), None)
    tot = next(((a, b) for a, b in combinations(range(n), 2) if not (matrix[a][b] or matrix[b][a])), None)
    for name, wit in (("reflexive", refl), ("antisymmetric", anti), ("transitive", trans), ("total", tot)):
        if wit is not None:
            w[name] = wit
    return RelationReport(tuple(tuple(r) for r in matrix), refl is None, anti is None,
                          trans is None, tot is None, w)


def relation_from_cone(h: FiniteCanonicalHypergroup, p: int) -> RelationReport:
    """x <= y iff (y * x^-1) meets P.  The result need not be an order."""
    n = h.n
    matrix = [[bool(h.op(y, h.neg(x)) & p) for y in range(n)] for x in range(n)]
    return classify_relation(matrix)


def cone_from_order(oh: OrderedCanonicalHypergroup) -> tuple[int, list[Diagnostic]]:
    h, e = oh.hypergroup, oh.hypergroup.identity
    p = mask_of(x for x in range(h.n) if oh.order.leq[e][x])
    return p, verify_positive_cone(h, p)


def sign_order(h: FiniteCanonicalHypergroup | None = None) -> OrderedCanonicalHypergroup:
    """The sign hypergroup with -1 <= 0 <= 1."""
    from .core import sign_hypergroup

    h = h or sign_hypergroup()
    chain = [h.index("-1"), h.index("0"), h.index("1")]
    return OrderedCanonicalHypergroup(h, OrderRelation.from_chain(chain))
