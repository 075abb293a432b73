"""Computable hypervaluations: the rationals with a p-adic sign hypervaluation.

Exact checks are impossible on an infinite field, so every identity is
tested on a deterministic stream of samples drawn from ``(seed, n_samples)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from sympy import isprime

from .order import OrderedCanonicalHypergroup, sign_order
from .report import Report, check
from .valuations import INF, v_geq, v_min, v_star


@dataclass(frozen=True)
class ComputableField:
    name: str
    zero: object
    one: object
    add: Callable
    neg: Callable
    mul: Callable
    inv: Callable
    eq: Callable
    sample: Callable[[random.Random], object]  # a nonzero element


def padic_valuation(x, p: int):
    x = Fraction(x)
    if x == 0:
        return INF
    k = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


def rationals(p: int, max_exp: int = 8, max_unit: int = 1000) -> ComputableField:
    """Q with a sampler that spreads p-adic valuations over [-max_exp, max_exp]."""
    def sample(rng: random.Random) -> Fraction:
        k = rng.randint(-max_exp, max_exp)
        u = Fraction(rng.randint(1, max_unit), rng.randint(1, max_unit))
        s = -1 if rng.random() < 0.5 else 1
        return s * u * Fraction(p) ** k

    return ComputableField(
        "Q", Fraction(0), Fraction(1),
        lambda a, b: a + b, lambda a: -a, lambda a, b: a * b, lambda a: 1 / a,
        lambda a, b: a == b, sample,
    )


@dataclass(frozen=True)
class ComputableHypervaluation:
    field: ComputableField
    codomain: OrderedCanonicalHypergroup
    value: Callable  # field element -> codomain index or INF
    valuation: Callable  # backing classical valuation, field element -> int or INF
    canonical_rep: Callable | None = None  # coset representative of x·U_w
    meta: dict = field(default_factory=dict)

    def __call__(self, x):
        return self.value(x)


def sign_hypervaluation_padic(p: int) -> ComputableHypervaluation:
    """w(x) = 1, 0, -1 as v_p(x) is positive, zero, negative; w(0) = ∞."""
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"{p!r} is not a prime")
    H = sign_order()
    hg = H.hypergroup
    pos, zero, neg = hg.index("1"), hg.index("0"), hg.index("-1")

    def v(x):
        return padic_valuation(x, p)

    def w(x):
        k = v(x)
        if k is INF:
            return INF
        return pos if k > 0 else zero if k == 0 else neg

    def rep(x):
        k = v(x)
        return Fraction(0) if k is INF else Fraction(p) ** k

    return ComputableHypervaluation(rationals(p), H, w, v, rep, {"p": p})


class _Tally:
    def __init__(self):
        self.counts: dict[str, int] = {}
        self.violations: dict[str, int] = {}
        self.first: dict[str, tuple] = {}

    def __call__(self, name: str, ok: bool, index: int, witness) -> None:
        self.counts[name] = self.counts.get(name, 0) + 1
        if not ok:
            self.violations[name] = self.violations.get(name, 0) + 1
            self.first.setdefault(name, (index, witness))

    def add_to(self, rep: Report) -> None:
        for name, cnt in self.counts.items():
            bad = self.violations.get(name, 0)
            wit = None
            if bad:
                i, w = self.first[name]
                wit = {"sample": i, "values": [str(v) for v in w]}
            rep.add(check(name, bad == 0, wit, samples=cnt, violations=bad))


def draw_pairs(cw: ComputableHypervaluation, n_samples: int, seed: int):
    """Deterministic (x, y) pairs; some draws hit 0, y = x and y = -x on purpose."""
    rng = random.Random(seed)
    F = cw.field
    for i in range(n_samples):
        x = F.sample(rng)
        y = F.sample(rng)
        r = i % 20
        if r == 0:
            x = F.zero
        elif r == 1:
            y = F.neg(x)
        elif r == 2:
            y = x
        yield i, x, y


def sampled_check(cw: ComputableHypervaluation, n_samples: int = 10000, seed: int = 0) -> Report:
    """Axioms of a hypervaluation, the w(1) = e / w(x^-1) = w(x)^-1 identities and
    the backing valuation's laws, on deterministic samples."""
    H, F, w, v = cw.codomain, cw.field, cw.value, cw.valuation
    hg = H.hypergroup
    e = hg.identity
    t = _Tally()
    if n_samples:
        t("valpro w(1)=e", w(F.one) == e, -1, (F.one,))
    for i, x, y in draw_pairs(cw, n_samples, seed):
        wx, wy = w(x), w(y)
        t("V1 w(x)=inf iff x=0", (wx is INF) == F.eq(x, F.zero), i, (x,))
        t("V2 w(-x)=w(x)", w(F.neg(x)) == wx, i, (x,))
        t("V3 w(xy) in w(x)*w(y)", w(F.mul(x, y)) in v_star(H, wx, wy), i, (x, y))
        # over a field x + y is a single element
        t("V4 w(x+y) >= min", v_geq(H, w(F.add(x, y)), v_min(H, wx, wy)), i, (x, y))
        if not F.eq(x, F.zero):
            t("valpro w(x^-1)=w(x)^-1", w(F.inv(x)) == hg.neg(wx), i, (x,))
        vx, vy = v(x), v(y)
        vxy = v(F.mul(x, y))
        t("backing v(xy)=v(x)+v(y)",
          vxy is INF if (vx is INF or vy is INF) else vxy == vx + vy, i, (x, y))
        vs = v(F.add(x, y))
        t("backing v(x+y)>=min", vs is INF or vs >= min(k for k in (vx, vy) if k is not INF), i, (x, y))
    rep = Report(f"sampled hypervaluation check ({cw.meta})")
    t.add_to(rep)
    rep.summary = {"seed": seed, "n_samples": n_samples, "no_evidence": n_samples == 0,
                   "violations": sum(t.violations.values())}
    return rep


def decompose_sampled(cw: ComputableHypervaluation, n_samples: int = 10000, seed: int = 0) -> Report:
    """w = h∘v with v(x) = x·U_w ≅ v_p(x) in Z and h(k) = w(p^k), checked on samples."""
    H, F, w, v = cw.codomain, cw.field, cw.value, cw.valuation
    hg = H.hypergroup
    e = hg.identity
    rep = sampled_check(cw, n_samples, seed)
    rep.title = f"sampled decomposition ({cw.meta})"

    def h(k):
        return INF if k is INF else w(cw.canonical_rep(Fraction(cw.meta["p"]) ** k))

    t = _Tally()
    seen = set()
    for i, x, y in draw_pairs(cw, n_samples, seed):
        k = v(x)
        if k is not INF:
            seen.add(k)
            rx = cw.canonical_rep(x)
            # x and its representative lie in the same coset of U_w
            t("canonical rep in same coset", w(F.mul(x, F.inv(rx))) == e, i, (x,))
        t("w = h∘v", h(k) == w(x), i, (x,))
        in_ov = k is INF or k >= 0
        in_ow = v_geq(H, w(x), e)
        t("O_v = O_w", in_ov == in_ow, i, (x,))
        # v itself is a valuation onto Z (a group viewed as a hypergroup)
        vs = v(F.add(x, y))
        ky = v(y)
        finite = [a for a in (k, ky) if a is not INF]
        t("v: V4", vs is INF or not finite or vs >= min(finite), i, (x, y))
    rng = sorted(seen)
    t("h(0)=e", h(0) == e, -1, (0,))
    for a in rng:
        for b in rng:
            if a <= b:
                t("h order preserving", H.order.leq[h(a)][h(b)], -1, (a, b))
            t("h homomorphism", hg.op(h(a), h(b)) >> h(a + b) & 1 == 1, -1, (a, b))
    t.add_to(rep)
    rep.summary.update({"value_range": [min(rng), max(rng)] if rng else [],
                        "h": {str(k): hg.labels[h(k)] for k in (-1, 0, 1)}})
    return rep


def o_equal_without_isomorphism_report(p: int = 2, n_samples: int = 10000, seed: int = 0) -> Report:
    """O_v = O_w for v = v_p and its sign hypervaluation w, yet no bijection between
    the value structures: |H| = 3 while v takes the pairwise distinct values 0..3."""
    cw = sign_hypervaluation_padic(p)
    H, v, w = cw.codomain, cw.valuation, cw.value
    e = H.hypergroup.identity
    agree = 0
    total = 0
    for _, x, _ in draw_pairs(cw, n_samples, seed):
        total += 1
        k = v(x)
        agree += (k is INF or k >= 0) == v_geq(H, w(x), e)
    rep = Report(f"O_v = O_w without order isomorphism (p={p})")
    rep.add(check("O_v = O_w on samples", agree == total, None, samples=total, agreement=agree))
    powers = [Fraction(p) ** k for k in range(4)]
    vals = [v(x) for x in powers]
    rep.add(check("cardinality obstruction", len(set(vals)) == 4 > H.n,
                  [str(x) for x in powers], values=vals, hypergroup_size=H.n))
    inv_p = Fraction(1, p)
    rep.add(check("1/p excluded by both", v(inv_p) < 0 and not v_geq(H, w(inv_p), e), None,
                  v=v(inv_p), w=H.hypergroup.labels[w(inv_p)]))
    one = Fraction(1)
    rep.add(check("1 included by both", v(one) >= 0 and v_geq(H, w(one), e)))
    rep.summary = {"agreement": f"{agree}/{total}", "cardinality_witness": [str(x) for x in powers]}
    return rep
