import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperkit.core import cyclic_group_table, embed_group, mask_of, sign_hypergroup, trivial_hypergroup
from hyperkit.enumeration import enumerate_canonical_hypergroups, enumerate_ordered_hypergroups, enumerate_orders
from hyperkit.order import (
    OrderRelation,
    OrderedCanonicalHypergroup,
    check_compatibility,
    check_fvk_properties,
    classify_relation,
    cone_from_order,
    dominates,
    relation_from_cone,
    sign_order,
    verify_positive_cone,
)
from hyperkit.quotients import quotient_hypergroup, FiniteCommutativeRing


@pytest.fixture
def sign():
    h = sign_hypergroup()
    return h, sign_order(h).order, {lab: h.index(lab) for lab in h.labels}


def S(ix, *labs):
    return mask_of(ix[x] for x in labs)


def test_dominates_examples(sign):
    h, o, ix = sign
    assert dominates(S(ix, "-1"), S(ix, "-1", "0", "1"), o)
    assert dominates(S(ix, "0"), S(ix, "0"), o)
    assert not dominates(S(ix, "1"), S(ix, "-1"), o)


def test_order_validation():
    with pytest.raises(ValueError):
        OrderRelation(((True, True), (True, True)))
    with pytest.raises(ValueError):
        OrderRelation(((False,),))
    assert not OrderRelation.discrete(2).total
    assert OrderRelation.from_chain([2, 0, 1]).chain() == [2, 0, 1]


def test_sign_order_compatible_and_fvk(sign):
    h, o, _ = sign
    assert check_compatibility(h, o)
    assert all(check_fvk_properties(OrderedCanonicalHypergroup(h, o)))


def test_reversed_sign_order_regression(sign):
    # exhaustive triple check: the reversed chain 1 <= 0 <= -1 is also compatible
    h, _, ix = sign
    rev = OrderRelation.from_chain([ix["1"], ix["0"], ix["-1"]])
    assert check_compatibility(h, rev)


def test_discrete_order_always_compatible():
    for n in (1, 2, 3):
        for h in enumerate_canonical_hypergroups(n):
            assert check_compatibility(h, OrderRelation.discrete(n))


def test_fvk_trivial():
    t = trivial_hypergroup()
    assert all(check_fvk_properties(OrderedCanonicalHypergroup(t, OrderRelation.discrete(1))))


def test_fvk_on_all_ordered_catalogs():
    for n in (1, 2, 3):
        for oh in enumerate_ordered_hypergroups(n):
            assert all(check_fvk_properties(oh))


def test_incompatible_order_rejected():
    z3 = embed_group(cyclic_group_table(3), 0)
    o = OrderRelation.from_chain([0, 1, 2])
    d = check_compatibility(z3, o)
    assert not d
    with pytest.raises(ValueError):
        OrderedCanonicalHypergroup(z3, o)


def test_sign_cone(sign):
    h, _, ix = sign
    p = S(ix, "0", "1")
    assert all(verify_positive_cone(h, p))
    rel = relation_from_cone(h, p)
    assert rel.is_order and rel.total
    assert rel.matrix == sign_order(h).order.leq


def test_trivial_cone():
    t = trivial_hypergroup()
    assert all(verify_positive_cone(t, 1))
    assert relation_from_cone(t, 1).matrix == ((True,),)


def test_identity_cone_fails_p3_on_z3():
    z3 = embed_group(cyclic_group_table(3), 0)
    names = [d.name for d in verify_positive_cone(z3, 0b001) if not d.ok]
    assert names == ["P3 P∪-P=H"]


def test_f5_square_class_cone_fails_p1():
    h = quotient_hypergroup(FiniteCommutativeRing.zmod(5), [1, 4])
    q = h.index("1")  # orbit {1, 4}
    assert h.neg(q) == q
    d = verify_positive_cone(h, mask_of([h.identity, q]))
    assert not d[0] and d[0].name.startswith("P1")


def test_cone_from_order(sign):
    h, _, ix = sign
    p, diags = cone_from_order(sign_order(h))
    assert p == S(ix, "0", "1") and all(diags)
    p, diags = cone_from_order(OrderedCanonicalHypergroup(trivial_hypergroup(), OrderRelation.discrete(1)))
    assert p == 1 and all(diags)


def test_cone_from_order_regression_n3():
    # one row per ordered hypergroup of order 3: (cone mask, cone verified)
    got = [(cone_from_order(oh)[0], all(cone_from_order(oh)[1])) for oh in enumerate_ordered_hypergroups(3)]
    assert got == [(5, True), (1, False), (1, False), (1, False), (1, False), (1, False)]


def test_orders_per_structure_regression_n3():
    counts = [len(enumerate_orders(h)) for h in enumerate_canonical_hypergroups(3)]
    assert counts == [0, 0, 4, 0, 1, 0, 0, 1, 2, 2]


def test_classify_relation_witnesses():
    r = classify_relation([[True, True], [True, True]])
    assert not r.antisymmetric and r.witnesses["antisymmetric"] == (0, 1)
    r = classify_relation([[True, False], [False, True]])
    assert r.is_order and not r.total


def _random_order(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    # a random chain plus a random subset of its comparabilities, closed transitively
    chains = [[perm[i], perm[j]] for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    return OrderRelation.from_chains(chains, n)


@settings(max_examples=500)
@given(st.integers(0, 2**32), st.integers(1, 5))
def test_dominates_reflexive_transitive(seed, n):
    rng = random.Random(seed)
    o = _random_order(rng, n)
    full = (1 << n) - 1
    a, b, c = (rng.randint(1, full) for _ in range(3))
    assert dominates(a, a, o)
    if dominates(a, b, o) and dominates(b, c, o):
        assert dominates(a, c, o)
