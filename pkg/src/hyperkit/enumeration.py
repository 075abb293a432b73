"""Exhaustive enumeration of small hyperstructures, deduplicated up to isomorphism.

The canonical form of a table fixes the identity at index 0 and takes the
lexicographically least flattened table over permutations of the rest.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterator

from .core import (
    MAX_CARRIER,
    FiniteCanonicalHypergroup,
    cyclic_group_table,
    full_mask,
    mask_of,
    members,
    verify_canonical,
)
from .hyperrings import FiniteHyperfield, diagnose_hyperfield, verify_hyperfield
from .order import OrderRelation, OrderedCanonicalHypergroup, check_compatibility, is_positive_cone, relation_from_cone
from .valuations import INF, FiniteHypervaluation, check_hypervaluation


class BudgetExceeded(Exception):
    pass


@dataclass
class Catalog:
    kind: str
    n: int | None
    entries: list = field(default_factory=list)
    forms: list = field(default_factory=list)
    exhaustive: bool = True
    nodes: int = 0

    @property
    def count(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_CARRIER:
        raise ValueError(f"order {n} outside 1..{MAX_CARRIER}")


def _permute_table(table, perm):
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(
        mask_of(perm[z] for z in members(table[inv[x]][inv[y]]))
        for x in range(n) for y in range(n)
    )


def _rest_perms(n: int):
    for rest in permutations(range(1, n)):
        yield (0,) + rest


def canonical_form(table) -> tuple:
    """Least flattened table over relabelings fixing index 0 (the identity)."""
    return min(_permute_table(table, p) for p in _rest_perms(len(table)))


def _unflatten(flat, n):
    return tuple(tuple(flat[x * n:(x + 1) * n]) for x in range(n))


def _involutions(n: int, dedup: bool) -> Iterator[list[int]]:
    """Inverse maps on {0..n-1} fixing 0.  Up to conjugacy only one per number of swaps."""
    pts = list(range(1, n))
    if dedup:
        for t in range(len(pts) // 2 + 1):
            inv = list(range(n))
            for i in range(t):
                a, b = pts[2 * i], pts[2 * i + 1]
                inv[a], inv[b] = b, a
            yield inv
        return

    def rec(rest, inv):
        if not rest:
            yield list(inv)
            return
        a = rest[0]
        yield from rec(rest[1:], inv)
        for j in range(1, len(rest)):
            b = rest[j]
            inv[a], inv[b] = b, a
            yield from rec(rest[1:j] + rest[j + 1:], inv)
            inv[a], inv[b] = a, b

    yield from rec(pts, list(range(n)))


def _search_tables(n: int, inv: list[int], budget: list[int]) -> Iterator[tuple]:
    """Backtrack over the upper triangle of cells not involving the identity."""
    full = full_mask(n)
    table = [[0] * n for _ in range(n)]
    known = [[False] * n for _ in range(n)]
    for x in range(n):
        table[0][x] = table[x][0] = 1 << x
        known[0][x] = known[x][0] = True
    cells = [(x, y) for x in range(1, n) for y in range(x, n)]
    domains = []
    for x, y in cells:
        must = y == inv[x]
        domains.append([m for m in range(1, full + 1) if bool(m & 1) == must])

    def ok_after(x0, y0) -> bool:
        rng = range(n)
        for x in rng:
            for y in rng:
                if not known[x][y]:
                    continue
                xy = table[x][y]
                ix = inv[x]
                # reversibility: z in x*y => y in x^-1 * z
                for z in members(xy):
                    if known[ix][z] and not table[ix][z] >> y & 1:
                        return False
                for z in rng:
                    if not known[y][z]:
                        continue
                    lu = members(xy)
                    rv = members(table[y][z])
                    if all(known[u][z] for u in lu) and all(known[x][v] for v in rv):
                        left = 0
                        for u in lu:
                            left |= table[u][z]
                        right = 0
                        for v in rv:
                            right |= table[x][v]
                        if left != right:
                            return False
        return True

    def rec(i):
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded
        if i == len(cells):
            yield tuple(tuple(r) for r in table)
            return
        x, y = cells[i]
        for m in domains[i]:
            table[x][y] = table[y][x] = m
            known[x][y] = known[y][x] = True
            if ok_after(x, y):
                yield from rec(i + 1)
            known[x][y] = known[y][x] = False
        table[x][y] = table[y][x] = 0

    yield from rec(0)


def enumerate_canonical_hypergroups(n: int, dedup: bool = True, budget: int | None = None) -> Catalog:
    """Every canonical hypergroup of order n with identity at index 0.

    With ``dedup`` one entry per isomorphism class (sorted by canonical form).
    """
    _check_n(n)
    cat = Catalog("hypergroup", n)
    left = [budget if budget is not None else 1 << 62]
    found = {}
    try:
        for inv in _involutions(n, dedup):
            for table in _search_tables(n, inv, left):
                key = canonical_form(table) if dedup else tuple(m for row in table for m in row)
                if key not in found:
                    found[key] = verify_canonical(_unflatten(key, n) if dedup else table, 0)
    except BudgetExceeded:
        cat.exhaustive = False
    cat.nodes = (budget if budget is not None else 1 << 62) - left[0]
    for key in sorted(found):
        cat.forms.append(key)
        cat.entries.append(found[key])
    return cat


# ---------------------------------------------------------------- naive oracle

def naive_canonical_hypergroups(n: int, assume_identity_law: bool = False) -> list[tuple]:
    """Deliberately naive: every table of subsets, every identity, filtered by the
    definition using plain frozensets.  Returns one (table, e) per isomorphism class.

    With ``assume_identity_law`` the identity row/column is fixed to x*e = {x}
    (a consequence of H3 and H4), which makes n = 3 feasible.
    """
    H = range(n)
    subsets = [frozenset(s) for k in range(n + 1) for s in combinations(H, k)]
    pairs = [(x, y) for x in H for y in H]

    def op(t, A, B):
        out = set()
        for a in A:
            for b in B:
                out |= t[a, b]
        return frozenset(out)

    def is_canonical(t, e):
        if any(not t[p] for p in pairs):
            return False
        for x, y, z in product(H, H, H):
            if op(t, t[x, y], {z}) != op(t, {x}, t[y, z]):
                return False
        if any(t[x, y] != t[y, x] for x, y in pairs):
            return False
        inv = {}
        for x in H:
            c = [y for y in H if e in t[x, y]]
            if len(c) != 1:
                return False
            inv[x] = c[0]
        for x, y in pairs:
            for z in t[x, y]:
                if y not in t[inv[x], z]:
                    return False
        return True

    results = []
    for e in H:
        if assume_identity_law:
            free = [(x, y) for x, y in pairs if x != e and y != e]
            fixed = {(x, e): frozenset({x}) for x in H}
            fixed.update({(e, y): frozenset({y}) for y in H})
        else:
            free, fixed = pairs, {}
        for choice in product(subsets, repeat=len(free)):
            t = dict(fixed)
            t.update(zip(free, choice))
            if is_canonical(t, e):
                results.append((t, e))

    def iso(a, b):
        (t1, e1), (t2, e2) = a, b
        for perm in permutations(H):
            if perm[e1] != e2:
                continue
            if all(frozenset(perm[z] for z in t1[x, y]) == t2[perm[x], perm[y]] for x, y in pairs):
                return True
        return False

    classes = []
    for r in results:
        if not any(iso(r, c) for c in classes):
            classes.append(r)
    return classes


# ---------------------------------------------------------------- orders and cones

def enumerate_orders(h: FiniteCanonicalHypergroup) -> list[OrderRelation]:
    """All linear orders on h compatible with the hyperoperation."""
    out = []
    for chain in permutations(range(h.n)):
        o = OrderRelation.from_chain(chain)
        if check_compatibility(h, o):
            out.append(o)
    return out


def enumerate_ordered_hypergroups(n: int) -> Catalog:
    """Ordered hypergroups of order n, up to order isomorphism."""
    cat = Catalog("ordered hypergroup", n)
    seen = set()
    for h in enumerate_canonical_hypergroups(n):
        for o in enumerate_orders(h):
            key = _ordered_form(h, o)
            if key not in seen:
                seen.add(key)
                cat.forms.append(key)
                cat.entries.append(OrderedCanonicalHypergroup(h, o))
    return cat


def _ordered_form(h, o):
    best = None
    for p in _rest_perms(h.n):
        inv = [0] * h.n
        for i, q in enumerate(p):
            inv[q] = i
        leq = tuple(o.leq[inv[a]][inv[b]] for a in range(h.n) for b in range(h.n))
        key = (_permute_table(h.table, p), leq)
        if best is None or key < best:
            best = key
    return best


def search_positive_cones(h: FiniteCanonicalHypergroup) -> list[int]:
    e = 1 << h.identity
    return [p for p in range(1, h.carrier + 1) if p & e and is_positive_cone(h, p)]


@dataclass
class MiningResult:
    witness: tuple | None  # (hypergroup, cone mask, RelationReport)
    exhaustive: bool
    searched: dict
    infinite_witness: object = None

    @property
    def found(self) -> bool:
        return self.witness is not None


def mine_cone_order_counterexample(max_n: int, budget: int | None = None) -> MiningResult:
    """First finite (H, P) whose cone relation fails antisymmetry or totality."""
    from .squareclass import reproduce_cone_counterexample

    _check_n(max_n)
    searched = {}
    exhaustive = True
    witness = None
    for n in range(1, max_n + 1):
        cat = enumerate_canonical_hypergroups(n, budget=budget)
        exhaustive &= cat.exhaustive
        count = 0
        for h in cat:
            for p in search_positive_cones(h):
                count += 1
                rel = relation_from_cone(h, p)
                if witness is None and not (rel.antisymmetric and rel.total):
                    witness = (h, p, rel)
        searched[n] = {"hypergroups": cat.count, "cones": count}
        if witness is not None:
            break
    return MiningResult(witness, exhaustive, searched, reproduce_cone_counterexample())


# ---------------------------------------------------------------- hyperfields

def _cyclic_product(factors):
    """Cayley table of Z_d1 x ... x Z_dk with elements in mixed-radix order."""
    elems = list(product(*[range(d) for d in factors]))
    index = {g: i for i, g in enumerate(elems)}
    return [[index[tuple((a + b) % d for a, b, d in zip(g, h, factors))] for h in elems] for g in elems]


def _invariant_factor_lists(m: int):
    """All chains d1 | d2 | ... | dk with product m and d1 > 1."""
    out = []

    def rec(rem, prev, acc):
        if rem == 1:
            out.append(acc)
            return
        for d in range(2, rem + 1):
            if rem % d == 0 and (prev is None or d % prev == 0):
                # remaining factors must be multiples of d
                rest = rem // d
                if rest == 1 or rest % d == 0:
                    rec(rest, d, acc + [d])

    rec(m, None, [])
    return out or [[1]]


def abelian_group_tables(m: int) -> list[list[list[int]]]:
    """One Cayley table per isomorphism type of abelian group of order m (identity 0)."""
    if m == 1:
        return [cyclic_group_table(1)]
    return [_cyclic_product(fs) for fs in _invariant_factor_lists(m)]


def _field_form(add, mul):
    n = len(add)
    best = None
    for p in _rest_perms(n):
        inv = [0] * n
        for i, q in enumerate(p):
            inv[q] = i
        key = (_permute_table(add, p), tuple(p[mul[inv[x]][inv[y]]] for x in range(n) for y in range(n)))
        if best is None or key < best:
            best = key
    return best


def enumerate_hyperfields(n: int, budget: int | None = None) -> Catalog:
    """Hyperfields of order n up to isomorphism (zero at index 0)."""
    _check_n(n)
    cat = Catalog("hyperfield", n)
    if n < 2:
        return cat
    hyps = enumerate_canonical_hypergroups(n, budget=budget)
    cat.exhaustive = hyps.exhaustive
    found = {}
    for h in hyps:
        for g in abelian_group_tables(n - 1):
            for perm in permutations(range(1, n)):
                mul = [[0] * n for _ in range(n)]
                for a in range(n - 1):
                    for b in range(n - 1):
                        mul[perm[a]][perm[b]] = perm[g[a][b]]
                one = perm[0]
                if not all(diagnose_hyperfield(h.table, 0, mul, one)):
                    continue
                key = _field_form(h.table, mul)
                if key not in found:
                    add_t = _unflatten(key[0], n)
                    mul_t = _unflatten(key[1], n)
                    one_k = next(x for x in range(1, n) if all(mul_t[x][y] == y for y in range(n)))
                    found[key] = verify_hyperfield(add_t, 0, mul_t, one_k)
    for key in sorted(found):
        cat.forms.append(key)
        cat.entries.append(found[key])
    return cat


# ---------------------------------------------------------------- hypervaluations

def enumerate_hypervaluations(f: FiniteHyperfield, h: OrderedCanonicalHypergroup) -> Catalog:
    """Every surjective map F -> H ∪ {∞} with 0 ↦ ∞ passing the hypervaluation axioms."""
    if not h.order.total:
        raise ValueError("codomain order must be total")
    cat = Catalog("hypervaluation", f.n)
    nz = f.nonzero()
    for choice in product(range(h.n), repeat=len(nz)):
        cat.nodes += 1
        if len(set(choice)) != h.n:
            continue
        vals = [INF] * f.n
        for x, a in zip(nz, choice):
            vals[x] = a
        w = FiniteHypervaluation(f, h, tuple(vals))
        if all(check_hypervaluation(w)):
            cat.entries.append(w)
            cat.forms.append(tuple(vals))
    return cat
