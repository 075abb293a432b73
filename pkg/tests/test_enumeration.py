import random
from itertools import permutations

import pytest

from hyperkit.core import members, sign_hypergroup, trivial_hypergroup
from hyperkit.enumeration import (
    canonical_form,
    enumerate_canonical_hypergroups,
    enumerate_hyperfields,
    enumerate_ordered_hypergroups,
    enumerate_orders,
    mine_cone_order_counterexample,
    naive_canonical_hypergroups,
    search_positive_cones,
)
from hyperkit.hyperrings import sign_hyperfield
from hyperkit.morphisms import find_hyperfield_isomorphism, find_isomorphism
from hyperkit.order import sign_order

# computed once with the oracles below, then frozen
HYPERGROUPS = {1: 1, 2: 2, 3: 10, 4: 97}
LABELLED_N3 = 15
ORDERED = {1: 1, 2: 1, 3: 6, 4: 54}
HYPERFIELDS = {2: 2, 3: 5, 4: 7}
CONES_PER_ORDER = {1: 1, 2: 0, 3: 2, 4: 0}


def _naive_form(t, e, n):
    """Canonical form of an oracle table after moving e to index 0."""
    perm = [0] * n
    rest = [x for x in range(n) if x != e]
    perm[e] = 0
    for i, x in enumerate(rest, 1):
        perm[x] = i
    table = [[0] * n for _ in range(n)]
    for (x, y), s in t.items():
        table[perm[x]][perm[y]] = sum(1 << perm[z] for z in s)
    return canonical_form(table)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts_frozen(n):
    assert len(enumerate_canonical_hypergroups(n)) == HYPERGROUPS[n]


def test_naive_oracle_agrees_n2():
    oracle = naive_canonical_hypergroups(2)
    cat = enumerate_canonical_hypergroups(2)
    assert len(oracle) == len(cat) == 2
    assert sorted(_naive_form(t, e, 2) for t, e in oracle) == sorted(cat.forms)


def test_identity_law_oracle_agrees_n3():
    oracle = naive_canonical_hypergroups(3, assume_identity_law=True)
    cat = enumerate_canonical_hypergroups(3)
    assert sorted(_naive_form(t, e, 3) for t, e in oracle) == sorted(cat.forms)


def test_n2_structures():
    forms = {tuple(map(tuple, h.table)) for h in enumerate_canonical_hypergroups(2)}
    assert forms == {((1, 2), (2, 1)), ((1, 2), (2, 3))}


def test_labelled_count_is_sum_of_orbits():
    labelled = enumerate_canonical_hypergroups(3, dedup=False)
    assert len(labelled) == LABELLED_N3
    orbit_total = 0
    for h in enumerate_canonical_hypergroups(3):
        orbit_total += len({h.relabel((0,) + p).table for p in permutations((1, 2))})
    assert orbit_total == LABELLED_N3


def test_sign_in_n3_catalog():
    assert sum(find_isomorphism(sign_hypergroup(), h) is not None for h in enumerate_canonical_hypergroups(3)) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dedup_sound(n):
    cat = enumerate_canonical_hypergroups(n).entries
    rng = random.Random(n)
    pairs = [(a, b) for a in range(len(cat)) for b in range(a + 1, len(cat))]
    for a, b in rng.sample(pairs, min(len(pairs), 200)):
        assert find_isomorphism(cat[a], cat[b]) is None


@pytest.mark.parametrize("n", [3, 4])
def test_dedup_complete(n):
    cat = enumerate_canonical_hypergroups(n)
    for h, form in zip(cat.entries, cat.forms):
        for p in permutations(range(1, n)):
            g = h.relabel((0,) + p)
            assert canonical_form(g.table) == form


def test_budget_flag():
    cat = enumerate_canonical_hypergroups(4, budget=50)
    assert not cat.exhaustive and len(cat) < HYPERGROUPS[4]


def test_out_of_range():
    with pytest.raises(ValueError):
        enumerate_canonical_hypergroups(0)
    with pytest.raises(ValueError):
        enumerate_canonical_hypergroups(17)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ordered_counts(n):
    assert len(enumerate_ordered_hypergroups(n)) == ORDERED[n]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hyperfield_counts(n):
    cat = enumerate_hyperfields(n)
    assert len(cat) == HYPERFIELDS[n]
    for i, a in enumerate(cat.entries):
        for b in cat.entries[i + 1:]:
            assert find_hyperfield_isomorphism(a, b) is None


def test_sign_hyperfield_in_catalog():
    assert sum(find_hyperfield_isomorphism(sign_hyperfield(), f) is not None for f in enumerate_hyperfields(3)) == 1


def test_sign_orders_and_cones():
    h = sign_hypergroup()
    chains = [tuple(h.labels[x] for x in o.chain()) for o in enumerate_orders(h)]
    assert ("-1", "0", "1") in chains
    cones = [{h.labels[x] for x in members(p)} for p in search_positive_cones(h)]
    assert {"0", "1"} in cones


def test_trivial_orders_and_cones():
    t = trivial_hypergroup()
    assert len(enumerate_orders(t)) == 1
    assert search_positive_cones(t) == [1]


def test_cone_mining_regression():
    res = mine_cone_order_counterexample(4)
    assert not res.found and res.exhaustive
    assert {n: v["cones"] for n, v in res.searched.items()} == CONES_PER_ORDER
    assert res.infinite_witness.ok


def test_ordered_sign_present():
    s = sign_order()
    hits = [oh for oh in enumerate_ordered_hypergroups(3) if find_isomorphism(s, oh, order_preserving=True)]
    assert len(hits) == 1
