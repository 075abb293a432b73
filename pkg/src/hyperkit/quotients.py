"""Krasner quotients R/G, the sign quotient of Q, and the Z/N failure."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import isprime

from .core import FiniteCanonicalHypergroup, mask_of, verify_canonical
from .hyperrings import FiniteHyperfield, FiniteHyperring, verify_hyperfield, verify_hyperring
from .morphisms import find_hyperfield_isomorphism
from .order import OrderRelation, OrderedCanonicalHypergroup, check_compatibility
from .report import Report, check


@dataclass(frozen=True)
class FiniteCommutativeRing:
    """Either Z/mZ (``modulus``) or an explicit table ring."""

    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int = 0
    one: int = 1
    modulus: int | None = None

    @property
    def n(self) -> int:
        return len(self.add)

    @classmethod
    def zmod(cls, m: int) -> "FiniteCommutativeRing":
        if m < 2:
            raise ValueError("modulus must be at least 2")
        rng = range(m)
        return cls(tuple(tuple((x + y) % m for y in rng) for x in rng),
                   tuple(tuple(x * y % m for y in rng) for x in rng), 0, 1 % m, m)

    @classmethod
    def from_tables(cls, add, mul, zero: int = 0, one: int = 1) -> "FiniteCommutativeRing":
        r = cls(tuple(map(tuple, add)), tuple(map(tuple, mul)), zero, one)
        r.check_axioms()
        return r

    def neg(self, x: int) -> int:
        return next(y for y in range(self.n) if self.add[x][y] == self.zero)

    def is_field(self) -> bool:
        if self.modulus is not None:
            return isprime(self.modulus)
        return all(any(self.mul[x][y] == self.one for y in range(self.n))
                   for x in range(self.n) if x != self.zero) and self.one != self.zero

    def check_axioms(self) -> None:
        n, rng = self.n, range(self.n)
        A, M = self.add, self.mul
        for x in rng:
            if A[x][self.zero] != x or M[x][self.one] != x:
                raise ValueError(f"identity fails at {x}")
            if not any(A[x][y] == self.zero for y in rng):
                raise ValueError(f"{x} has no additive inverse")
            for y in rng:
                if A[x][y] != A[y][x] or M[x][y] != M[y][x]:
                    raise ValueError(f"commutativity fails at {(x, y)}")
                for z in rng:
                    if A[A[x][y]][z] != A[x][A[y][z]] or M[M[x][y]][z] != M[x][M[y][z]]:
                        raise ValueError(f"associativity fails at {(x, y, z)}")
                    if M[x][A[y][z]] != A[M[x][y]][M[x][z]]:
                        raise ValueError(f"distributivity fails at {(x, y, z)}")
        if n and self.zero == self.one and n > 1:
            raise ValueError("0 = 1 in a nontrivial ring")


def check_unit_subgroup(r: FiniteCommutativeRing, g: Sequence[int]) -> frozenset[int]:
    gs = frozenset(g)
    if not gs:
        raise ValueError("subgroup is empty")
    if any(not 0 <= x < r.n for x in gs):
        raise ValueError("subgroup element outside ring")
    if r.one not in gs:
        raise ValueError("subgroup does not contain 1")
    for x in sorted(gs):
        for y in sorted(gs):
            if r.mul[x][y] not in gs:
                raise ValueError(f"subgroup not closed: {x}·{y} = {r.mul[x][y]}")
        if not any(r.mul[x][y] == r.one for y in gs):
            raise ValueError(f"{x} has no inverse inside the subgroup")
    return gs


def unit_subgroups(r: FiniteCommutativeRing) -> list[frozenset[int]]:
    """All subgroups of the unit group (by closing every subset of generators)."""
    unit = [x for x in range(r.n) if any(r.mul[x][y] == r.one for y in range(r.n))]

    def close(gens):
        s = {r.one} | set(gens)
        while True:
            nxt = s | {r.mul[a][b] for a in s for b in s}
            if nxt == s:
                return frozenset(s)
            s = nxt

    found = {close(())}
    frontier = list(found)
    while frontier:
        cur = frontier.pop()
        for u in unit:
            if u not in cur:
                g = close(cur | {u})
                if g not in found:
                    found.add(g)
                    frontier.append(g)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _orbits(r: FiniteCommutativeRing, g: frozenset[int]) -> list[frozenset[int]]:
    seen, out = set(), []
    # zero orbit first so that the identity sits at index 0
    for a in [r.zero] + [x for x in range(r.n) if x != r.zero]:
        if a in seen:
            continue
        orb = frozenset(r.mul[a][x] for x in g)
        seen |= orb
        out.append(orb)
    return out


def _orbit_label(r: FiniteCommutativeRing, orb) -> str:
    return str(min(orb))


def _quotient_tables(r: FiniteCommutativeRing, g):
    g = check_unit_subgroup(r, g)
    orbits = _orbits(r, g)
    where = {x: i for i, orb in enumerate(orbits) for x in orb}
    reps = [min(orb) for orb in orbits]
    k = len(orbits)
    add = [[0] * k for _ in range(k)]
    mul = [[0] * k for _ in range(k)]
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            add[i][j] = mask_of(where[r.add[r.mul[a][s]][r.mul[b][t]]] for s in g for t in g)
            mul[i][j] = where[r.mul[a][b]]
    labels = [_orbit_label(r, orb) for orb in orbits]
    return orbits, add, mul, where[r.one], labels


def quotient_hypergroup(r: FiniteCommutativeRing, g: Sequence[int]) -> FiniteCanonicalHypergroup:
    """aG + bG = {(ag + bh)G : g, h in G}; orbits labelled by their least member."""
    _, add, _, _, labels = _quotient_tables(r, g)
    return verify_canonical(add, 0, labels)


def quotient_hyperring(r: FiniteCommutativeRing, g: Sequence[int]) -> FiniteHyperring:
    _, add, mul, one, labels = _quotient_tables(r, g)
    return verify_hyperring(add, 0, mul, one, labels)


def quotient_hyperfield(r, g: Sequence[int]) -> FiniteHyperfield:
    if isinstance(r, int):
        r = FiniteCommutativeRing.zmod(r)
    if not r.is_field():
        raise ValueError("quotient hyperfield needs a field")
    _, add, mul, one, labels = _quotient_tables(r, g)
    return verify_hyperfield(add, 0, mul, one, labels)


def quotient_orbits(r: FiniteCommutativeRing, g: Sequence[int]) -> list[frozenset[int]]:
    return _orbits(r, check_unit_subgroup(r, g))


def sign_quotient_of_rationals():
    """Q modulo the positive rationals: classes neg, zero, pos.

    Sums of representatives with positive multipliers g, h in {1, 2} already
    realise every class the full quotient can produce: a positive combination
    of two positives (negatives) stays positive (negative), and pos + neg
    reaches all three signs via 2-1, 1-1, 1-2.
    """
    labels = ("zero", "pos", "neg")
    sign_of = {0: 0, 1: 1, 2: -1}
    idx = {0: 0, 1: 1, -1: 2}

    def cls(q: Fraction) -> int:
        return idx[(q > 0) - (q < 0)]

    mults = (Fraction(1), Fraction(2))
    add = [[mask_of(cls(sign_of[a] * s + sign_of[b] * t) for s in mults for t in mults)
            for b in range(3)] for a in range(3)]
    mul = [[idx[sign_of[a] * sign_of[b]] for b in range(3)] for a in range(3)]
    f = verify_hyperfield(add, 0, mul, 1, labels)

    from .hyperrings import sign_hyperfield
    from .order import sign_order

    target = sign_hyperfield()
    src_order = OrderRelation.from_chain([2, 0, 1])
    tgt = sign_order(target.additive)
    rep = Report("sign quotient of Q by positive rationals")
    rep.add(check("hyperfield axioms", True))
    rep.add(check("pos+neg = {neg, zero, pos}", add[1][2] == 0b111,
                  {"neg": "1-2", "zero": "1-1", "pos": "2-1"}))
    rep.add(check("pos+pos = {pos}", add[1][1] == 0b010))
    rep.add(check("order compatible", check_compatibility(f.additive, src_order).ok))
    iso = find_hyperfield_isomorphism(f, target, order_preserving=True, orders=(src_order, tgt.order))
    mapping = None if iso is None else {labels[i]: target.labels[iso.mapping[i]] for i in range(3)}
    rep.add(check("order-preserving strong isomorphism to sign hyperfield", iso is not None, mapping))
    rep.summary = {"isomorphism": mapping}
    return f, OrderedCanonicalHypergroup(f.additive, src_order), rep


def demonstrate_ZN_failure(k_max: int, bound: int) -> Report:
    """Z/N with N = {1, 2, 3, ...}: the class of 1 has many inverse candidates.

    Orbits aN are truncated to values of absolute value at most ``bound``.
    """
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    if bound < k_max:
        raise ValueError("bound must be at least k_max so the witnesses fit")

    def orbit(a: int) -> frozenset[int]:
        if a == 0:
            return frozenset({0})
        return frozenset(a * n for n in range(1, bound // abs(a) + 1))

    rep = Report(f"Z/N inverse failure (k_max={k_max}, bound={bound})")
    candidates = []
    for k in range(1, k_max + 1):
        # 0 = 1·k + (-k)·1 with k, 1 in N
        c = 1 * k + (-k) * 1
        ok = c == 0 and k in orbit(1) and -k in orbit(-k) and c in orbit(0)
        rep.add(check(f"0N ∈ 1N * (-{k})N", ok, {"sum": f"1·{k} + (-{k})·1 = {c}"}))
        candidates.append(-k)
    distinct = True
    for i, j in ((i, j) for i in range(len(candidates)) for j in range(i + 1, len(candidates))):
        a, b = candidates[i], candidates[j]
        # the larger (closer to zero) value a lies in aN but not in bN
        sep = a in orbit(a) and a not in orbit(b)
        distinct &= sep
        rep.add(check(f"({a})N != ({b})N", sep, {"element": a}))
    rep.add(check("H3 violated for class of 1", distinct and len(candidates) >= 2,
                  [f"({k})N" for k in candidates]))
    rep.summary = {"inverse_candidates": len(candidates), "verdict": "H3 not fulfilled"}
    return rep
