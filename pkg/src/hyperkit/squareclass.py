"""The square-class hypergroup Q/Q̇² as a membership oracle.

The hyperoperation ``aQ̇² + bQ̇²`` has infinitely many classes in general, so it
is never materialised.  Two routes decide membership:

* :func:`sc_sum_members` - bounded witness search (sound, incomplete);
* :func:`sc_membership_exact` - local-global decision via Hilbert symbols.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy import factorint, isprime

from .report import Report, check

INF = "inf"


def _squarefree(n: int) -> int:
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    out = 1
    for p, k in factorint(abs(n)).items():
        if k % 2:
            out *= p
    return sign * out


@dataclass(frozen=True, order=True)
class SquareClass:
    """Canonical squarefree representative; ``rep == 0`` is the zero class."""

    rep: int

    def __post_init__(self):
        if _squarefree(self.rep) != self.rep:
            raise ValueError(f"{self.rep} is not squarefree")

    @property
    def is_zero(self) -> bool:
        return self.rep == 0

    def __neg__(self) -> "SquareClass":
        return SquareClass(-self.rep)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(_squarefree(self.rep * other.rep))

    def __str__(self) -> str:
        return f"{self.rep}Q²"


def square_class_of(q) -> SquareClass:
    q = Fraction(q)
    # num/den and num*den differ by the square den**2
    return SquareClass(_squarefree(q.numerator * q.denominator))


def _as_class(x) -> SquareClass:
    return x if isinstance(x, SquareClass) else square_class_of(x)


@dataclass(frozen=True)
class SumWitness:
    g: Fraction  # nonzero square multiplying a
    h: Fraction  # nonzero square multiplying b
    value: Fraction  # a*g + b*h, lies in the class c


def sc_sum_members(a, b, bound: int) -> dict[SquareClass, SumWitness]:
    """Classes c with c ∈ aQ̇² + bQ̇² certified by g=(p/q)², h=(r/s)², p,q,r,s <= bound.

    Each class keeps its smallest witness: least height max(p,q,r,s), then
    integral squares first, then smallest numerators.
    """
    a, b = _as_class(a), _as_class(b)
    best: dict[SquareClass, tuple] = {}
    rng = range(1, bound + 1)
    for p, q, r, s in product(rng, rng, rng, rng):
        if math.gcd(p, q) != 1 or math.gcd(r, s) != 1:
            continue
        g = Fraction(p, q) ** 2
        h = Fraction(r, s) ** 2
        val = a.rep * g + b.rep * h
        c = square_class_of(val)
        key = (max(p, q, r, s), q * s, max(p, r), p, q, r, s)
        if c not in best or key < best[c][0]:
            best[c] = (key, SumWitness(g, h, val))
    return {c: w for c, (_, w) in sorted(best.items())}


def _split(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a, b, place) -> int:
    """Local Hilbert symbol (a, b)_v for v a prime or ``"inf"``.

    Rational arguments are replaced by square-class representatives, which
    leaves the symbol unchanged.
    """
    a = _as_class(a).rep if not isinstance(a, int) else a
    b = _as_class(b).rep if not isinstance(b, int) else b
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place in (INF, math.inf, "oo", "∞"):
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(place, int) or not isprime(place):
        raise ValueError(f"place must be a prime or 'inf', got {place!r}")
    p = place
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2
        omega = lambda t: ((t * t - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * _legendre(u, p) ** (beta % 2) * _legendre(v, p) ** (alpha % 2)


def relevant_places(*nums: int) -> list:
    primes = set()
    for n in nums:
        primes.update(factorint(abs(n)).keys())
    primes.add(2)
    return [INF] + sorted(primes)


def sc_membership_exact(c, a, b) -> bool:
    """Decide c ∈ aQ̇² + bQ̇², i.e. whether c = a·x² + b·y² with x, y nonzero rationals.

    For nonzero c this asks whether the binary form <a, b> represents c, which
    happens iff <a, b, -c> is isotropic iff (ac, bc)_v = +1 at every place v
    (Hasse-Minkowski).  Only ∞, 2 and the odd primes dividing abc can give -1.

    A solution with x = 0 or y = 0 is still enough: the affine conic
    a·x² + b·y² = c is smooth (abc != 0), so one rational point gives a rational
    parametrisation with infinitely many points, while the axes meet the conic
    in at most four points.  Hence points with x·y != 0 exist as well.

    For c = 0 the question is whether a·g = -b·h for squares g, h, i.e. whether
    -ab is a square.
    """
    c, a, b = _as_class(c), _as_class(a), _as_class(b)
    if a.is_zero and b.is_zero:
        return c.is_zero
    if a.is_zero or b.is_zero:
        return c == (b if a.is_zero else a)
    if c.is_zero:
        return (-(a * b)).rep == 1
    ac, bc = a.rep * c.rep, b.rep * c.rep
    places = relevant_places(a.rep, b.rep, c.rep)
    symbols = [hilbert_symbol(ac, bc, v) for v in places]
    # product formula: every other place contributes +1
    assert math.prod(symbols) == 1, f"product formula violated for {(ac, bc)}"
    return all(s == 1 for s in symbols)


def _sign_cone(cls: SquareClass) -> bool:
    return cls.rep >= 0


def reproduce_cone_counterexample(bound: int = 4) -> Report:
    """Relation x <= y iff (y - x) meets the positive cone fails antisymmetry on Q/Q̇².

    3Q̇² <= 2Q̇² via 5 = 2·4 - 3·1 and 2Q̇² <= 3Q̇² via 1 = 3·1 - 2·1.
    """
    rep = Report("cone counterexample in Q/Q̇²")
    two, three = SquareClass(2), SquareClass(3)
    found = {}
    for x, y, c, g, h in ((three, two, SquareClass(5), 4, 1), (two, three, SquareClass(1), 1, 1)):
        # y * x^{-1}: the additive inverse of xQ̇² is (-x)Q̇²
        val = y.rep * g + (-x.rep) * h
        arith = square_class_of(val) == c
        exact = sc_membership_exact(c, y, -x)
        members = sc_sum_members(y, -x, bound)
        searched = c in members
        if not (arith and exact and searched and _sign_cone(c)):
            raise AssertionError(f"could not confirm {c} in {y} + {-x}")
        found[(x, y)] = c
        w = members[c]
        rep.add(check(f"{x} <= {y}", True,
                      {"class": c.rep, "g": g, "h": h, "value": val},
                      relation=f"{c} ∈ ({y} * ({x})^-1) ∩ P",
                      exact_membership=exact, bounded_search=searched,
                      search_witness={"g": w.g, "h": w.h, "value": w.value}, bound=bound))
    rep.add(check("2Q² != 3Q²", two != three, None))
    rep.add(check("antisymmetry failure reproduced", True, [str(three), str(two)],
                  verdict="not antisymmetric"))

    sample = [SquareClass(s * r) for r in (1, 2, 3, 5, 6) for s in (1, -1)] + [SquareClass(0)]
    neg_p = [-c for c in sample if _sign_cone(c)]
    p1 = {c for c in sample if _sign_cone(c)} & set(neg_p) == {SquareClass(0)}
    pos = [c for c in sample if _sign_cone(c)]
    p2_bad = [(a, b, c) for a in pos for b in pos for c in sample
              if not _sign_cone(c) and sc_membership_exact(c, a, b)]
    p3 = all(_sign_cone(c) or _sign_cone(-c) for c in sample)
    rep.add(check("P1 on sampled classes", p1))
    rep.add(check("P2 on sampled classes", not p2_bad, p2_bad[0] if p2_bad else None))
    rep.add(check("P3 on sampled classes", p3))
    rep.summary = {"verdict": "not antisymmetric", "classes": [c.rep for c in sample]}
    return rep
