"""Maps H -> Q on a finite hypergroup with pointwise sum and the convolution product.

The product is ``(fg)(x) = Σ f(x1) g(x2)`` over ordered pairs with ``x ∈ x1*x2``.
It is not associative once sums are genuinely set-valued.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .core import FiniteCanonicalHypergroup


@dataclass(frozen=True)
class FiniteSupportMap:
    domain: FiniteCanonicalHypergroup
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.domain.n:
            raise ValueError("map must assign a value to every element")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def from_labels(cls, h: FiniteCanonicalHypergroup, assignment: Mapping[str, object]) -> "FiniteSupportMap":
        return cls(h, tuple(Fraction(assignment[lab]) for lab in h.labels))

    @classmethod
    def constant(cls, h, c) -> "FiniteSupportMap":
        return cls(h, (Fraction(c),) * h.n)

    @classmethod
    def delta(cls, h, x: int | None = None) -> "FiniteSupportMap":
        x = h.identity if x is None else x
        return cls(h, tuple(Fraction(int(i == x)) for i in range(h.n)))

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def __add__(self, other):
        return pointwise_add(self, other)

    def __neg__(self):
        return FiniteSupportMap(self.domain, tuple(-v for v in self.values))

    def __mul__(self, other):
        return convolve(self, other)

    def by_label(self) -> dict[str, Fraction]:
        return dict(zip(self.domain.labels, self.values))


def _same_domain(f: FiniteSupportMap, g: FiniteSupportMap) -> None:
    if f.domain != g.domain:
        raise ValueError("maps live on different hypergroups")


def pointwise_add(f: FiniteSupportMap, g: FiniteSupportMap) -> FiniteSupportMap:
    _same_domain(f, g)
    return FiniteSupportMap(f.domain, tuple(a + b for a, b in zip(f.values, g.values)))


def convolve(f: FiniteSupportMap, g: FiniteSupportMap) -> FiniteSupportMap:
    _same_domain(f, g)
    h = f.domain
    n = h.n
    out = [Fraction(0)] * n
    for x1 in range(n):
        fx = f.values[x1]
        if not fx:
            continue
        row = h.table[x1]
        for x2 in range(n):
            term = fx * g.values[x2]
            if not term:
                continue
            m, x = row[x2], 0
            while m:
                if m & 1:
                    out[x] += term
                m >>= 1
                x += 1
    return FiniteSupportMap(h, tuple(out))


def associativity_probe(f, g, h) -> tuple[int, Fraction, Fraction] | None:
    """First element (carrier order) where (fg)h and f(gh) differ, with both values."""
    left = convolve(convolve(f, g), h)
    right = convolve(f, convolve(g, h))
    for x in range(f.domain.n):
        if left.values[x] != right.values[x]:
            return x, left.values[x], right.values[x]
    return None


def paper_maps(hg: FiniteCanonicalHypergroup | None = None) -> tuple[FiniteSupportMap, ...]:
    """The three maps on the sign hypergroup that break associativity."""
    from .core import sign_hypergroup

    hg = hg or sign_hypergroup()
    f = FiniteSupportMap.from_labels(hg, {"-1": 1, "0": 1, "1": 1})
    g = FiniteSupportMap.from_labels(hg, {"-1": -1, "0": -1, "1": -1})
    h = FiniteSupportMap.from_labels(hg, {"1": 1, "0": -1, "-1": 0})
    return f, g, h

