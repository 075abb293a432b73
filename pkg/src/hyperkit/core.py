"""Finite hypergroupoids given by set-valued operation tables.

Subsets of the carrier are stored as integer bit masks (bit ``i`` set means
element ``i`` is present).  A table is an ``n x n`` tuple of such masks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_CARRIER = 16


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class Diagnostic:
    """Outcome of a single check.  Truthy iff the check passed."""

    name: str
    ok: bool
    witness: tuple | None = None
    details: str = ""

    def __bool__(self) -> bool:
        return self.ok


class AxiomError(ValueError):
    """Raised by the ``verify_*`` constructors; carries every failed diagnostic."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        failed = [d for d in self.diagnostics if not d.ok]
        msg = "; ".join(f"{d.name}: {d.details}" for d in failed) or "verification failed"
        super().__init__(msg)


def normalize_table(table: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(table)
    if n == 0:
        raise ValueError("empty carrier")
    if n > MAX_CARRIER:
        raise ValueError(f"carrier size {n} exceeds cap {MAX_CARRIER}")
    full = full_mask(n)
    rows = []
    for x, row in enumerate(table):
        if len(row) != n:
            raise ValueError(f"row {x} has length {len(row)}, expected {n}")
        for y, m in enumerate(row):
            if m <= 0 or m & ~full:
                raise ValueError(f"entry ({x}, {y}) is not a nonempty subset of the carrier")
        rows.append(tuple(int(m) for m in row))
    return tuple(rows)


def subset_product(table, a: int, b: int) -> int:
    """A*B as the union of x*y over x in A, y in B."""
    out = 0
    for x in members(a):
        row = table[x]
        for y in members(b):
            out |= row[y]
    return out


def _fmt_set(mask: int, labels=None) -> str:
    items = members(mask)
    if labels is not None:
        items = [labels[i] for i in items]
    return "{" + ", ".join(str(i) for i in items) + "}"


def check_associativity(table) -> Diagnostic:
    n = len(table)
    for x in range(n):
        for y in range(n):
            xy = table[x][y]
            for z in range(n):
                left = 0
                for u in members(xy):
                    left |= table[u][z]
                right = 0
                for v in members(table[y][z]):
                    right |= table[x][v]
                if left != right:
                    return Diagnostic(
                        "H1 associativity", False, (x, y, z),
                        f"(x*y)*z = {_fmt_set(left)} but x*(y*z) = {_fmt_set(right)}",
                    )
    return Diagnostic("H1 associativity", True)


def check_commutativity(table) -> Diagnostic:
    n = len(table)
    for x in range(n):
        for y in range(x + 1, n):
            if table[x][y] != table[y][x]:
                return Diagnostic(
                    "H2 commutativity", False, (x, y),
                    f"x*y = {_fmt_set(table[x][y])} but y*x = {_fmt_set(table[y][x])}",
                )
    return Diagnostic("H2 commutativity", True)


def check_inverses(table, e: int) -> tuple[tuple[int, ...] | None, Diagnostic]:
    """Collect ``{x' : e in x*x'}`` for every x.

    Returns ``(inverse_map, diagnostic)``; the map is ``None`` unless every
    candidate set is a singleton.
    """
    n = len(table)
    bit = 1 << e
    inverse = []
    for x in range(n):
        cands = [y for y in range(n) if table[x][y] & bit]
        if len(cands) != 1:
            what = "no inverse" if not cands else f"{len(cands)} inverse candidates"
            return None, Diagnostic("H3 unique inverse", False, (x, tuple(cands)), what)
        inverse.append(cands[0])
    return tuple(inverse), Diagnostic("H3 unique inverse", True)


def check_reversibility(table, inverse: Sequence[int]) -> Diagnostic:
    n = len(table)
    for x in range(n):
        xi = table[inverse[x]]
        for y in range(n):
            for z in members(table[x][y]):
                if not xi[z] >> y & 1:
                    return Diagnostic(
                        "H4 reversibility", False, (x, y, z),
                        "z in x*y but y not in x^-1*z",
                    )
    return Diagnostic("H4 reversibility", True)


def check_identity_law(table, e: int) -> Diagnostic:
    for x in range(len(table)):
        if table[x][e] != 1 << x:
            return Diagnostic("identity law x*e={x}", False, (x,), f"x*e = {_fmt_set(table[x][e])}")
    return Diagnostic("identity law x*e={x}", True)


@dataclass(frozen=True)
class FiniteCanonicalHypergroup:
    """A verified canonical hypergroup.  Build it with :func:`verify_canonical`."""

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.table)

    @property
    def carrier(self) -> int:
        return full_mask(self.n)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def prod(self, a: int, b: int) -> int:
        return subset_product(self.table, a, b)

    def neg(self, x: int) -> int:
        return self.inverse[x]

    def neg_set(self, mask: int) -> int:
        return mask_of(self.inverse[x] for x in members(mask))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def show(self, mask: int) -> str:
        return _fmt_set(mask, self.labels)

    def relabel(self, perm: Sequence[int]) -> "FiniteCanonicalHypergroup":
        """Isomorphic copy in which old element ``i`` becomes ``perm[i]``."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        table = tuple(
            tuple(mask_of(perm[z] for z in members(self.table[inv[x]][inv[y]])) for y in range(n))
            for x in range(n)
        )
        labels = tuple(self.labels[inv[x]] for x in range(n))
        inverse = tuple(perm[self.inverse[inv[x]]] for x in range(n))
        return FiniteCanonicalHypergroup(labels, table, perm[self.identity], inverse)


def diagnose_canonical(table, e: int) -> tuple[tuple[int, ...] | None, list[Diagnostic]]:
    """Run every independently checkable axiom; H4 only once H3 yields an inverse map."""
    table = normalize_table(table)
    if not 0 <= e < len(table):
        raise ValueError(f"identity index {e} out of range")
    diags = [check_associativity(table), check_commutativity(table)]
    inverse, d3 = check_inverses(table, e)
    diags.append(d3)
    if inverse is not None:
        diags.append(check_reversibility(table, inverse))
        diags.append(check_identity_law(table, e))
    return inverse, diags


def verify_canonical(table, e: int, labels: Sequence[str] | None = None) -> FiniteCanonicalHypergroup:
    table = normalize_table(table)
    if labels is None:
        labels = [str(i) for i in range(len(table))]
    if len(labels) != len(table):
        raise ValueError("label count does not match carrier size")
    inverse, diags = diagnose_canonical(table, e)
    if inverse is None or not all(diags):
        raise AxiomError(diags)
    return FiniteCanonicalHypergroup(tuple(labels), table, e, inverse)


def check_marty(h: FiniteCanonicalHypergroup) -> Diagnostic:
    full = h.carrier
    for x in range(h.n):
        if h.prod(1 << x, full) != full:
            return Diagnostic("Marty reproducibility", False, (x,), f"x*H = {h.show(h.prod(1 << x, full))}")
        if h.prod(full, 1 << x) != full:
            return Diagnostic("Marty reproducibility", False, (x,), "H*x != H")
    return Diagnostic("Marty reproducibility", True)


def check_group_table(cayley, e: int) -> None:
    """Raise ValueError naming the first violated abelian-group axiom."""
    n = len(cayley)
    rng = range(n)
    for x in rng:
        if len(cayley[x]) != n:
            raise ValueError(f"closure: row {x} has wrong length")
        for y in rng:
            if not 0 <= cayley[x][y] < n:
                raise ValueError(f"closure: {x}*{y} = {cayley[x][y]} outside carrier")
    for x in rng:
        if cayley[x][e] != x or cayley[e][x] != x:
            raise ValueError(f"identity: {x}*e != {x}")
    for x in rng:
        for y in rng:
            for z in rng:
                if cayley[cayley[x][y]][z] != cayley[x][cayley[y][z]]:
                    raise ValueError(f"associativity fails at {(x, y, z)}")
    for x in rng:
        if not any(cayley[x][y] == e for y in rng):
            raise ValueError(f"inverse: {x} has no inverse")
    for x in rng:
        for y in rng:
            if cayley[x][y] != cayley[y][x]:
                raise ValueError(f"commutativity fails at {(x, y)}")


def embed_group(cayley, e: int, labels: Sequence[str] | None = None) -> FiniteCanonicalHypergroup:
    """Turn an abelian group into a hypergroup via a*b = {ab}."""
    check_group_table(cayley, e)
    table = [[1 << cayley[x][y] for y in range(len(cayley))] for x in range(len(cayley))]
    return verify_canonical(table, e, labels)


def cyclic_group_table(m: int) -> list[list[int]]:
    return [[(x + y) % m for y in range(m)] for x in range(m)]


def sign_hypergroup() -> FiniteCanonicalHypergroup:
    # index order 0, 1, -1 keeps the identity at index 0
    z, p, m = 0, 1, 2
    t = [[0] * 3 for _ in range(3)]
    t[z][z] = 1 << z
    t[p][p] = t[p][z] = t[z][p] = 1 << p
    t[m][m] = t[m][z] = t[z][m] = 1 << m
    t[p][m] = t[m][p] = mask_of((m, z, p))
    return verify_canonical(t, z, ("0", "1", "-1"))


def trivial_hypergroup(label: str = "e") -> FiniteCanonicalHypergroup:
    return verify_canonical([[1]], 0, (label,))
