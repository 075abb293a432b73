from fractions import Fraction

import pytest

from hyperkit.padic import (
    ComputableHypervaluation,
    decompose_sampled,
    o_equal_without_isomorphism_report,
    padic_valuation,
    sampled_check,
    sign_hypervaluation_padic,
)
from hyperkit.valuations import INF


@pytest.fixture(scope="module")
def w2():
    return sign_hypervaluation_padic(2)


def label(cw, x):
    v = cw(x)
    return "inf" if v is INF else cw.codomain.hypergroup.labels[v]


def test_values(w2):
    assert label(w2, Fraction(5)) == "0"
    assert label(w2, Fraction(3, 4)) == "-1"
    assert label(w2, Fraction(12)) == "1"
    assert label(w2, Fraction(0)) == "inf"
    assert padic_valuation(Fraction(3, 4), 2) == -2


def test_non_prime():
    with pytest.raises(ValueError):
        sign_hypervaluation_padic(6)


def test_sampled_check_clean(w2):
    rep = sampled_check(w2, 2000, seed=0)
    assert rep.ok and rep.summary["violations"] == 0
    assert rep.find("V4 w(x+y) >= min").details["samples"] == 2000


def test_sampled_check_deterministic(w2):
    a = sampled_check(w2, 500, seed=3)
    b = sampled_check(w2, 500, seed=3)
    assert a.digest() == b.digest()


def test_no_evidence_flag(w2):
    rep = sampled_check(w2, 0, seed=0)
    assert rep.ok and rep.summary["no_evidence"] is True and rep.checks == []


def test_mutation_detected(w2):
    """Swap the branches for v > 0 and v = 0: the result must break V3 or V4."""
    H = w2.codomain.hypergroup
    pos, zero = H.index("1"), H.index("0")

    def bad(x):
        v = w2(x)
        return zero if v == pos else pos if v == zero else v

    mutant = ComputableHypervaluation(w2.field, w2.codomain, bad, w2.valuation, w2.canonical_rep, {"p": 2})
    rep = sampled_check(mutant, 2000, seed=0)
    failed = {c.name for c in rep.checks if not c.ok}
    assert failed & {"V3 w(xy) in w(x)*w(y)", "V4 w(x+y) >= min"}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_decompose_sampled(p):
    rep = decompose_sampled(sign_hypervaluation_padic(p), 2000, seed=1)
    assert rep.ok
    assert rep.summary["h"] == {"-1": "-1", "0": "0", "1": "1"}


def test_o_equal_report():
    rep = o_equal_without_isomorphism_report(2, 2000, 0)
    assert rep.ok
    assert rep.summary["agreement"] == "2000/2000"
    assert rep.summary["cardinality_witness"] == ["1", "2", "4", "8"]
    assert rep.find("1/p excluded by both").details == {"v": -1, "w": "-1"}
