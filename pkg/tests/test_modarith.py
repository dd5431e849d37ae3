import pytest
from hypothesis import given, strategies as st

from oracles import euler_phi, order_mod, units
from wcderived import _guards
from wcderived.errors import GuardError, ValidationError
from wcderived.modarith import (
    FiniteAbelianGroup,
    ZModElement,
    all_subgroups,
    element_order,
    is_subgroup,
    subgroup_generated,
    subgroup_generated_zmod,
    subgroup_span,
    unit_group,
)


@pytest.mark.parametrize("m, expected", [(5, {1, 2, 3, 4}), (1, {0}), (12, {1, 5, 7, 11})])
def test_unit_group_examples(m, expected):
    assert unit_group(m) == expected


@pytest.mark.parametrize("m", range(1, 80))
def test_unit_group_matches_gcd_filter_and_phi(m):
    assert unit_group(m) == units(m)
    if m > 1:
        assert len(unit_group(m)) == euler_phi(m)


def test_unit_group_rejects_bad_modulus():
    with pytest.raises(ValidationError):
        unit_group(0)
    with pytest.raises(GuardError):
        unit_group(2**31)


@pytest.mark.parametrize("x, m, expected", [(2, 5, 5), (0, 7, 1), (4, 12, 3)])
def test_element_order_examples(x, m, expected):
    assert element_order(x, m) == expected
    assert element_order(ZModElement(x, m)) == expected


@given(st.integers(1, 200), st.data())
def test_element_order_matches_repeated_addition(m, data):
    x = data.draw(st.integers(0, m - 1))
    assert element_order(x, m) == order_mod(x, m)


def test_element_order_needs_modulus():
    with pytest.raises(ValidationError):
        element_order(3)


def test_zmod_arithmetic():
    a, b = ZModElement.of(7, 12), ZModElement.of(9, 12)
    assert (a + b).value == 4
    assert (a - b).value == 10
    assert (-a).value == 5
    assert (a * b).value == 3
    assert (a * 5).value == 11
    assert a.is_unit() and not b.is_unit()
    assert (a * a.inverse()).value == 1
    with pytest.raises(ValidationError):
        b.inverse()


def test_zmod_rejects_mixed_moduli_and_unreduced():
    with pytest.raises(ValidationError):
        ZModElement.of(1, 5) + ZModElement.of(1, 7)
    with pytest.raises(ValidationError):
        ZModElement(5, 5)


def test_subgroup_examples():
    assert subgroup_generated_zmod(2, 6) == {0, 2, 4}
    G = FiniteAbelianGroup([2, 4])
    assert subgroup_generated(G, (0, 0)) == {(0, 0)}
    assert subgroup_generated(G, (1, 1)) == {(0, 0), (1, 1), (0, 2), (1, 3)}


def test_subgroup_generated_rejects_unreduced():
    with pytest.raises(ValidationError):
        subgroup_generated(FiniteAbelianGroup([2, 4]), (2, 0))


@given(st.lists(st.integers(1, 6), min_size=0, max_size=3), st.data())
def test_subgroup_generated_size_is_order(orders, data):
    G = FiniteAbelianGroup(orders)
    x = tuple(data.draw(st.integers(0, n - 1)) for n in orders)
    H = subgroup_generated(G, x)
    assert len(H) == G.element_order(x)
    assert is_subgroup(G, H)


def test_group_basics():
    G = FiniteAbelianGroup([2, 3])
    elts = list(G.elements())
    assert len(elts) == G.order == 6
    assert G.exponent == 6
    assert elts == sorted(elts)
    assert all(G.element_at(G.index(e)) == e for e in elts)
    assert G.add((1, 2), (1, 2)) == (0, 1)
    assert G.neg((1, 1)) == (1, 2)
    T = FiniteAbelianGroup([])
    assert list(T.elements()) == [()] and T.order == 1 and T.exponent == 1


def test_subgroup_counts():
    # Z/2 x Z/2 has 5 subgroups, Z/8 has 4, Z/2 x Z/4 has 8
    assert len(all_subgroups(FiniteAbelianGroup([2, 2]))) == 5
    assert len(all_subgroups(FiniteAbelianGroup([8]))) == 4
    assert len(all_subgroups(FiniteAbelianGroup([2, 4]))) == 8
    G = FiniteAbelianGroup([2, 4])
    assert all(is_subgroup(G, H) for H in all_subgroups(G))
    assert subgroup_span(G, [(1, 0), (0, 2)]) == {(0, 0), (1, 0), (0, 2), (1, 2)}


def test_guard_scale(monkeypatch):
    monkeypatch.setenv("WC_GUARD_SCALE", "3")
    assert _guards.guard_scale() == 3
    _guards.check(30, 10, "x")
    with pytest.raises(GuardError):
        _guards.check(31, 10, "x")
    monkeypatch.setenv("WC_GUARD_SCALE", "0")
    with pytest.raises(ValidationError):
        _guards.guard_scale()
    monkeypatch.setenv("WC_GUARD_SCALE", "abc")
    with pytest.raises(ValidationError):
        _guards.guard_scale()
