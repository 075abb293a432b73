from itertools import product

import pytest

from hyperkit.core import AxiomError, mask_of, members
from hyperkit.hyperrings import (
    all_hyperideals,
    check_distributivity,
    embed_field,
    is_maximal,
    is_valuation_hyperring,
    sign_hyperfield,
    units,
    verify_hyperfield,
    verify_hyperideal,
    verify_hyperring,
)
from hyperkit.quotients import quotient_hyperfield


def zmod_tables(m):
    return [[(x + y) % m for y in range(m)] for x in range(m)], [[x * y % m for y in range(m)] for x in range(m)]


def test_sign_hyperfield_products():
    f = sign_hyperfield()
    i = f.labels.index
    assert f.ring.mul[i("-1")][i("-1")] == i("1")
    assert f.ring.mul[i("1")][i("1")] == i("1")
    assert all(f.ring.mul[i("0")][x] == i("0") for x in range(3))
    assert f.inv(i("-1")) == i("-1")


def test_sign_distributive():
    f = sign_hyperfield()
    assert check_distributivity(f.additive.table, f.ring.mul)


def test_z2_field():
    add, mul = zmod_tables(2)
    f = embed_field(add, mul, 0, 1)
    assert f.nonzero() == [1]


def test_embedded_field_distributive():
    add, mul = zmod_tables(7)
    f = embed_field(add, mul, 0, 1)
    assert check_distributivity(f.additive.table, f.ring.mul)


def test_f5_quotient_distributive():
    f = quotient_hyperfield(5, [1, 4])
    assert check_distributivity(f.additive.table, f.ring.mul)


def test_degenerate_multiplication_rejected():
    # Krasner addition with the zero multiplication: 1 is not a unit
    add = [[0b01, 0b10], [0b10, 0b11]]
    mul = [[0, 0], [0, 0]]
    with pytest.raises(AxiomError) as exc:
        verify_hyperfield(add, 0, mul, 1)
    failed = {d.name for d in exc.value.diagnostics if not d.ok}
    assert "R2 unital" in failed


def test_hyperring_not_field():
    add, mul = zmod_tables(4)
    r = verify_hyperring([[1 << v for v in row] for row in add], 0, mul, 1)
    assert units(r) == mask_of([1, 3])
    with pytest.raises(AxiomError):
        verify_hyperfield([[1 << v for v in row] for row in add], 0, mul, 1)
    assert all(verify_hyperideal(r, mask_of([0, 2])))
    assert is_maximal(r, mask_of([0, 2]))
    assert all_hyperideals(r) == [0b0001, 0b0101, 0b1111]


def test_units_of_hyperfield_are_nonzero():
    for f in (sign_hyperfield(), quotient_hyperfield(7, [1, 2, 4])):
        assert units(f) == mask_of(f.nonzero())


def test_trivial_ideals():
    f = sign_hyperfield()
    zero = 1 << f.zero
    whole = (1 << f.n) - 1
    assert all(verify_hyperideal(f, zero))
    assert all(verify_hyperideal(f, whole))
    assert not is_maximal(f, whole)
    assert is_maximal(f, zero)


def test_valuation_hyperring_examples():
    f = sign_hyperfield()
    assert is_valuation_hyperring(f, (1 << f.n) - 1)
    # regression: {0, 1} is not closed under negation
    d = is_valuation_hyperring(f, mask_of([f.labels.index("0"), f.labels.index("1")]))
    assert not d and d.details == "-a leaves O"


def test_hyperideal_axioms_match_definition():
    """Brute-force every subset of Z/6 against the three axioms."""
    add, mul = zmod_tables(6)
    r = verify_hyperring([[1 << v for v in row] for row in add], 0, mul, 1)
    found = []
    for i in range(1, 1 << 6):
        els = members(i)
        ok = all((a + b) % 6 in els for a, b in product(els, els)) and \
            all((-a) % 6 in els for a in els) and all(a * x % 6 in els for a in els for x in range(6))
        assert all(verify_hyperideal(r, i)) == ok
        if ok:
            found.append(i)
    assert sorted(found) == sorted(all_hyperideals(r))
