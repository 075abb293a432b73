import random
from itertools import permutations

import pytest

from hyperkit.core import sign_hypergroup, trivial_hypergroup, verify_canonical
from hyperkit.enumeration import enumerate_canonical_hypergroups, enumerate_hyperfields, enumerate_hypervaluations, enumerate_ordered_hypergroups
from hyperkit.hyperrings import sign_hyperfield
from hyperkit.morphisms import HypergroupMap, find_isomorphism, is_homomorphism, is_strong_homomorphism
from hyperkit.order import OrderRelation, OrderedCanonicalHypergroup, sign_order
from hyperkit.quotients import quotient_hyperfield
from hyperkit.valuations import (
    INF,
    DecompositionError,
    FiniteHypervaluation,
    check_hypervaluation,
    check_prop,
    check_valpro,
    decompose,
    hypervaluation_from_labels,
    maximal_ideal,
    relabel_hypervaluation,
    trivial_hypervaluation,
    unit_group,
    valuation_ring,
    value_group,
    v_geq,
    v_min,
    v_star,
)

ONE = OrderedCanonicalHypergroup(trivial_hypergroup(), OrderRelation.discrete(1))


def test_infinity_convention():
    s = sign_order()
    assert v_geq(s, INF, 0) and not v_geq(s, 0, INF)
    assert v_min(s, INF, 1) == 1 and v_min(s, INF, INF) is INF
    assert v_star(s, INF, 1) == {INF}


def test_trivial_valuation():
    f = sign_hyperfield()
    w = trivial_hypervaluation(f, ONE)
    assert all(check_hypervaluation(w)) and all(check_valpro(w)) and all(check_prop(w))
    assert valuation_ring(w) == (1 << f.n) - 1
    assert unit_group(w) == (1 << f.n) - 1 & ~(1 << f.zero)
    assert maximal_ideal(w) == 1 << f.zero
    g = value_group(w)
    assert g.n == 1
    dec = decompose(w)
    assert dec.report.ok and dec.group.n == 1 and dec.h.mapping == (0,)


def test_v1_violation_witness():
    f = sign_hyperfield()
    vals = list(trivial_hypervaluation(f, ONE).values)
    vals[f.labels.index("1")] = INF
    d = check_hypervaluation(FiniteHypervaluation(f, ONE, tuple(vals)))[0]
    assert not d and d.witness == (f.labels.index("1"),)


def test_partial_order_codomain_rejected():
    h = sign_hypergroup()
    oh = OrderedCanonicalHypergroup(h, OrderRelation.discrete(3))
    w = FiniteHypervaluation(sign_hyperfield(), oh, (INF, 0, 0))
    with pytest.raises(ValueError):
        check_hypervaluation(w)


def test_sign_hyperfield_onto_sign_order_is_not_a_valuation():
    f = sign_hyperfield()
    w = hypervaluation_from_labels(f, sign_order(), {"0": "inf", "1": "1", "-1": "-1"})
    names = {d.name for d in check_hypervaluation(w) if not d.ok}
    assert "V2 w(-x)=w(x)" in names


def test_permutation_invariance():
    """Relabelling domain and codomain never changes any verdict."""
    rng = random.Random(11)
    fields = [f for n in (2, 3) for f in enumerate_hyperfields(n)]
    codomains = [oh for n in (1, 2) for oh in enumerate_ordered_hypergroups(n)]
    for f in fields:
        for oh in codomains:
            for _ in range(10):
                vals = tuple(INF if x == f.zero else rng.randrange(oh.n) for x in range(f.n))
                w = FiniteHypervaluation(f, oh, vals)
                base = [d.ok for d in check_hypervaluation(w)]
                rest_f = [x for x in range(f.n) if x != f.zero]
                pf = list(range(f.n))
                img = rest_f[:]
                rng.shuffle(img)
                for a, b in zip(rest_f, img):
                    pf[a] = b
                ph = list(range(oh.n))
                rng.shuffle(ph)
                w2 = relabel_hypervaluation(w, pf, ph)
                assert [d.ok for d in check_hypervaluation(w2)] == base


def test_finite_collapse_small():
    for n in (2, 3):
        for f in enumerate_hyperfields(n):
            for oh in enumerate_ordered_hypergroups(1):
                cat = enumerate_hypervaluations(f, oh)
                assert len(cat) == 1 and cat.entries[0] == trivial_hypervaluation(f, oh)
            for m in (2, 3):
                for oh in enumerate_ordered_hypergroups(m):
                    assert len(enumerate_hypervaluations(f, oh)) == 0


def test_quotient_fields_only_trivial():
    f = quotient_hyperfield(7, [1, 6])
    assert len(enumerate_hypervaluations(f, ONE)) == 1
    for oh in enumerate_ordered_hypergroups(2):
        assert len(enumerate_hypervaluations(f, oh)) == 0


def test_identity_is_strong_isomorphism():
    h = sign_hypergroup()
    m = HypergroupMap(h, h, tuple(range(3)))
    assert is_homomorphism(m) and is_strong_homomorphism(m) and m.bijective
    assert find_isomorphism(h, h) is not None


def test_homomorphism_not_strong():
    z2 = verify_canonical([[0b01, 0b10], [0b10, 0b01]], 0)
    k = verify_canonical([[0b01, 0b10], [0b10, 0b11]], 0)
    up = HypergroupMap(z2, k, (0, 1))
    # f(a*a) = {0} lies inside 1+1 = {0, 1}, but the sets differ
    assert is_homomorphism(up) and not is_strong_homomorphism(up)
    down = HypergroupMap(k, z2, (0, 1))
    assert not is_homomorphism(down)
    assert HypergroupMap(sign_hypergroup(), trivial_hypergroup(), (0, 0, 0)).strong


def test_sign_found_once_in_order_three_catalog():
    hits = [h for h in enumerate_canonical_hypergroups(3) if find_isomorphism(sign_hypergroup(), h)]
    assert len(hits) == 1


def test_isomorphisms_preserve_products():
    for h in enumerate_canonical_hypergroups(3):
        for perm in permutations(range(1, 3)):
            g = h.relabel((0,) + perm)
            m = find_isomorphism(h, g)
            assert m is not None
            for a in range(3):
                for b in range(3):
                    assert g.op(m(a), m(b)) == m.image(h.op(a, b))


def _gf4_mul(x, y):
    """GF(4) as polynomials over GF(2) modulo t^2 + t + 1, elements 0..3."""
    r = 0
    for i in range(2):
        if y >> i & 1:
            r ^= x << i
    if r & 4:
        r ^= 0b111
    return r


def test_gf4_hypervaluation_oracle():
    """Independent check: GF(4) onto {e, a} with a*a = {e, a} and a < e.

    w(1) = e, w(t) = w(t+1) = a. Every axiom holds, yet neither t nor
    t^-1 = t+1 has w >= e, so O_w = {0, 1} is not a valuation hyperring.
    """
    star = {("e", "e"): {"e"}, ("e", "a"): {"a"}, ("a", "e"): {"a"}, ("a", "a"): {"e", "a"}}
    rank = {"a": 0, "e": 1, "inf": 2}
    leq = {(x, y) for x in "ea" for y in "ea" if rank[x] <= rank[y]}
    # order compatibility with the domination used throughout: every b in B has some a in A below it
    for x, y in leq:
        for c in "ea":
            assert all(any(rank[p] <= rank[q] for p in star[x, c]) for q in star[y, c])
    w = {0: "inf", 1: "e", 2: "a", 3: "a"}
    for x in range(4):
        assert (w[x] == "inf") == (x == 0)
        for y in range(1, 4):
            if x:
                assert w[_gf4_mul(x, y)] in star[w[x], w[y]]
            assert rank[w[x ^ y]] >= min(rank[w[x]], rank[w[y]])
    inv = {x: next(y for y in range(1, 4) if _gf4_mul(x, y) == 1) for x in range(1, 4)}
    o_w = {x for x in range(4) if rank[w[x]] >= rank["e"]}
    assert o_w == {0, 1} and 2 not in o_w and inv[2] not in o_w


def test_order_four_hypervaluation_found():
    """The exhaustive search over order <= 4 finds exactly that map, and the
    valuation-ring and linear-value-group postconditions fail on it."""
    hits = []
    for n in (2, 3, 4):
        for f in enumerate_hyperfields(n):
            for m in (2, 3, 4):
                for oh in enumerate_ordered_hypergroups(m):
                    hits += enumerate_hypervaluations(f, oh).entries
    assert len(hits) == 1
    w = hits[0]
    assert w.domain.n == 4 and w.codomain.n == 2
    assert all(check_hypervaluation(w)) and all(check_valpro(w))
    failed = {d.name for d in check_prop(w) if not d.ok}
    assert failed == {"valuation hyperring", "G linear order"}
    with pytest.raises(DecompositionError) as exc:
        decompose(w)
    rep = exc.value.report
    assert not rep.find("v: codomain linearly ordered").ok and not rep.find("G linear order").ok
    assert rep.find("w = h∘v").ok
