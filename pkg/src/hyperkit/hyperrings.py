"""Krasner-style hyperrings: hyper-addition, single-valued multiplication."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    AxiomError,
    Diagnostic,
    FiniteCanonicalHypergroup,
    diagnose_canonical,
    full_mask,
    mask_of,
    members,
    normalize_table,
)


@dataclass(frozen=True)
class FiniteHyperring:
    additive: FiniteCanonicalHypergroup
    mul: tuple[tuple[int, ...], ...]
    one: int

    @property
    def n(self) -> int:
        return self.additive.n

    @property
    def zero(self) -> int:
        return self.additive.identity

    @property
    def labels(self):
        return self.additive.labels

    def add(self, x: int, y: int) -> int:
        return self.additive.table[x][y]

    def neg(self, x: int) -> int:
        return self.additive.inverse[x]

    def times(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def scale(self, x: int, mask: int) -> int:
        return mask_of(self.mul[x][a] for a in members(mask))


@dataclass(frozen=True)
class FiniteHyperfield:
    ring: FiniteHyperring
    mul_inverse: dict

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def zero(self) -> int:
        return self.ring.zero

    @property
    def one(self) -> int:
        return self.ring.one

    @property
    def additive(self) -> FiniteCanonicalHypergroup:
        return self.ring.additive

    @property
    def labels(self):
        return self.ring.labels

    def inv(self, x: int) -> int:
        return self.mul_inverse[x]

    def nonzero(self) -> list[int]:
        return [x for x in range(self.n) if x != self.zero]


def check_distributivity(add, mul) -> Diagnostic:
    """x(y+z) = xy + xz as sets, for all triples."""
    n = len(add)
    for x in range(n):
        mx = mul[x]
        for y in range(n):
            for z in range(n):
                left = mask_of(mx[a] for a in members(add[y][z]))
                right = add[mx[y]][mx[z]]
                if left != right:
                    return Diagnostic("R3 distributivity", False, (x, y, z),
                                      f"x(y+z) and xy+xz differ: {members(left)} vs {members(right)}")
    return Diagnostic("R3 distributivity", True)


def _check_monoid(mul, one: int, zero: int) -> list[Diagnostic]:
    n = len(mul)
    rng = range(n)
    out = []
    bad = next(((x, y) for x in rng for y in rng if not 0 <= mul[x][y] < n), None)
    if bad:
        return [Diagnostic("R2 closure", False, bad, "product outside carrier")]
    bad = next(((x, y) for x in rng for y in rng if mul[x][y] != mul[y][x]), None)
    out.append(Diagnostic("R2 commutative", bad is None, bad))
    bad = next(((x, y, z) for x in rng for y in rng for z in rng
                if mul[mul[x][y]][z] != mul[x][mul[y][z]]), None)
    out.append(Diagnostic("R2 associative", bad is None, bad))
    bad = next(((x,) for x in rng if mul[x][one] != x or mul[one][x] != x), None)
    out.append(Diagnostic("R2 unital", bad is None, bad))
    bad = next(((x,) for x in rng if mul[x][zero] != zero or mul[zero][x] != zero), None)
    out.append(Diagnostic("R2 x·0=0", bad is None, bad))
    return out


def _mul_group(mul, one: int, zero: int) -> tuple[dict | None, Diagnostic]:
    n = len(mul)
    if one == zero:
        return None, Diagnostic("multiplicative group", False, (zero,), "1 = 0")
    inv = {}
    for x in range(n):
        if x == zero:
            continue
        for y in range(n):
            if y != zero and mul[x][y] == zero:
                return None, Diagnostic("multiplicative group", False, (x, y), "zero divisor")
        cands = [y for y in range(n) if mul[x][y] == one]
        if not cands:
            return None, Diagnostic("multiplicative group", False, (x,), "no multiplicative inverse")
        inv[x] = cands[0]
    return inv, Diagnostic("multiplicative group", True)


def diagnose_hyperring(add, zero: int, mul, one: int) -> tuple[tuple | None, list[Diagnostic]]:
    add = normalize_table(add)
    inverse, diags = diagnose_canonical(add, zero)
    diags = [Diagnostic("R1 " + d.name, d.ok, d.witness, d.details) for d in diags]
    mul = tuple(tuple(int(v) for v in row) for row in mul)
    if len(mul) != len(add) or any(len(r) != len(add) for r in mul):
        raise ValueError("multiplication table has the wrong shape")
    diags += _check_monoid(mul, one, zero)
    if all(d.ok for d in diags if d.name.startswith("R2")):
        diags.append(check_distributivity(add, mul))
    return inverse, diags


def verify_hyperring(add, zero: int, mul, one: int, labels: Sequence[str] | None = None) -> FiniteHyperring:
    inverse, diags = diagnose_hyperring(add, zero, mul, one)
    if inverse is None or not all(diags):
        raise AxiomError(diags)
    add = normalize_table(add)
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(len(add)))
    additive = FiniteCanonicalHypergroup(labels, add, zero, inverse)
    return FiniteHyperring(additive, tuple(tuple(int(v) for v in r) for r in mul), one)


def verify_hyperfield(add, zero: int, mul, one: int, labels: Sequence[str] | None = None) -> FiniteHyperfield:
    inverse, diags = diagnose_hyperring(add, zero, mul, one)
    inv, dg = _mul_group(tuple(tuple(r) for r in mul), one, zero)
    diags.append(dg)
    if inverse is None or not all(diags):
        raise AxiomError(diags)
    ring = verify_hyperring(add, zero, mul, one, labels)
    return FiniteHyperfield(ring, inv)


def diagnose_hyperfield(add, zero, mul, one) -> list[Diagnostic]:
    _, diags = diagnose_hyperring(add, zero, mul, one)
    diags.append(_mul_group(tuple(tuple(r) for r in mul), one, zero)[1])
    return diags


def as_hyperfield(r: FiniteHyperring) -> FiniteHyperfield:
    inv, d = _mul_group(r.mul, r.one, r.zero)
    if inv is None:
        raise AxiomError([d])
    return FiniteHyperfield(r, inv)


def units(r, within: int | None = None) -> int:
    """Elements x with x·y = 1 for some y (y restricted to ``within`` if given)."""
    r = getattr(r, "ring", r)
    pool = members(within) if within is not None else range(r.n)
    pool = list(pool)
    return mask_of(x for x in pool if any(r.mul[x][y] == r.one for y in pool))


def _ring_of(r) -> FiniteHyperring:
    return getattr(r, "ring", r)


def verify_hyperideal(r, i: int, within: int | None = None) -> list[Diagnostic]:
    """Hyperideal axioms; with ``within`` the ambient ring is that sub-hyperring."""
    if not i:
        raise ValueError("hyperideals are nonempty")
    r = _ring_of(r)
    amb = full_mask(r.n) if within is None else within
    out = []
    if i & ~amb:
        out.append(Diagnostic("I⊆R", False, (members(i & ~amb)[0],), "element outside ambient ring"))
        return out
    els = members(i)
    bad = next(((a, b) for a in els for b in els if r.add(a, b) & ~i), None)
    out.append(Diagnostic("a+b⊆I", bad is None, bad))
    bad = next(((a,) for a in els if not i >> r.neg(a) & 1), None)
    out.append(Diagnostic("-a∈I", bad is None, bad))
    bad = next(((a, x) for a in els for x in members(amb) if not i >> r.mul[a][x] & 1), None)
    out.append(Diagnostic("ar∈I", bad is None, bad))
    return out


def ideal_closure(r, seed: int, within: int | None = None) -> int:
    """Smallest hyperideal containing ``seed`` (inside ``within``)."""
    r = _ring_of(r)
    amb = full_mask(r.n) if within is None else within
    amb_list = members(amb)
    cur = seed
    while True:
        els = members(cur)
        nxt = cur
        for a in els:
            nxt |= 1 << r.neg(a)
            for b in els:
                nxt |= r.add(a, b)
            for x in amb_list:
                nxt |= 1 << r.mul[a][x]
        if nxt == cur:
            return cur
        cur = nxt


def all_hyperideals(r, within: int | None = None) -> list[int]:
    r = _ring_of(r)
    amb = full_mask(r.n) if within is None else within
    start = ideal_closure(r, 1 << r.zero, within)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for x in members(amb & ~cur):
            j = ideal_closure(r, cur | 1 << x, within)
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return sorted(seen, key=lambda m: (bin(m).count("1"), m))


def is_maximal(r, i: int, within: int | None = None) -> Diagnostic:
    if not i:
        raise ValueError("hyperideals are nonempty")
    r = _ring_of(r)
    amb = full_mask(r.n) if within is None else within
    if not all(verify_hyperideal(r, i, within)):
        return Diagnostic("maximal hyperideal", False, None, "not a hyperideal")
    if i == amb:
        return Diagnostic("maximal hyperideal", False, None, "not proper")
    bigger = [ideal_closure(r, i | 1 << x, within) for x in members(amb & ~i)]
    proper = sorted((j for j in bigger if j != amb), key=lambda m: (bin(m).count("1"), m))
    if proper:
        return Diagnostic("maximal hyperideal", False, (proper[0],), "strictly larger proper hyperideal exists")
    return Diagnostic("maximal hyperideal", True)


def is_subhyperring(f, o: int) -> Diagnostic:
    r = _ring_of(f)
    if not o >> r.zero & 1 or not o >> r.one & 1:
        return Diagnostic("sub-hyperring", False, None, "missing 0 or 1")
    els = members(o)
    bad = next(((a, b) for a in els for b in els if r.add(a, b) & ~o), None)
    if bad:
        return Diagnostic("sub-hyperring", False, bad, "a+b leaves O")
    bad = next(((a, b) for a in els for b in els if not o >> r.mul[a][b] & 1), None)
    if bad:
        return Diagnostic("sub-hyperring", False, bad, "ab leaves O")
    bad = next(((a,) for a in els if not o >> r.neg(a) & 1), None)
    if bad:
        return Diagnostic("sub-hyperring", False, bad, "-a leaves O")
    return Diagnostic("sub-hyperring", True)


def is_valuation_hyperring(f: FiniteHyperfield, o: int) -> Diagnostic:
    d = is_subhyperring(f, o)
    if not d:
        return Diagnostic("valuation hyperring", False, d.witness, d.details)
    bad = next(((x,) for x in f.nonzero() if not (o >> x & 1 or o >> f.inv(x) & 1)), None)
    if bad:
        return Diagnostic("valuation hyperring", False, bad, "neither x nor x^-1 in O")
    return Diagnostic("valuation hyperring", True)


def embed_field(add_table, mul_table, zero: int, one: int, labels=None) -> FiniteHyperfield:
    """A classical finite field as a hyperfield with singleton sums."""
    n = len(add_table)
    add = [[1 << add_table[x][y] for y in range(n)] for x in range(n)]
    return verify_hyperfield(add, zero, mul_table, one, labels)


def sign_hyperfield() -> FiniteHyperfield:
    from .core import sign_hypergroup

    h = sign_hypergroup()
    z, p, m = h.index("0"), h.index("1"), h.index("-1")
    sign = {z: 0, p: 1, m: -1}
    back = {0: z, 1: p, -1: m}
    mul = [[back[sign[x] * sign[y]] for y in range(3)] for x in range(3)]
    return verify_hyperfield(h.table, z, mul, p, h.labels)


def relabel_hyperfield(f: FiniteHyperfield, perm: Sequence[int]) -> FiniteHyperfield:
    """Isomorphic copy in which old element ``i`` becomes ``perm[i]``."""
    add = f.additive.relabel(perm)
    n = f.n
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    mul = tuple(tuple(perm[f.ring.mul[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
    ring = FiniteHyperring(add, mul, perm[f.one])
    return FiniteHyperfield(ring, {perm[x]: perm[y] for x, y in f.mul_inverse.items()})
