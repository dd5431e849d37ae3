from itertools import product
from math import gcd

import numpy as np
import pytest

from oracles import order_mod, sl2_brute, sp_order_formula, units
from wcderived.errors import GuardError, ValidationError
from wcderived.unitary_orbits import (
    PairClass,
    PolarizationModel,
    gamma0_image,
    gamma0_word_check,
    orbit,
    polarized_conclusion_check,
    sl2_enumerate,
    sl2_order,
    sp_image,
    sp_order,
    stabilizer_size,
)


def brute_gamma0(N, m):
    return [M for M in sl2_brute(m) if M[2] % gcd(N, m) == 0]


def brute_orbit(start, mats, m, phi, psi):
    seen = {start}
    frontier = [start]
    while frontier:
        x, y = frontier.pop()
        for a, b, c, d in mats:
            nxt = ((a * x + b * psi * y) % m, (c * phi * x + d * y) % m)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return sorted(seen)


def test_gamma0_examples():
    assert gamma0_image(1, 5).size == 120
    assert gamma0_image(2, 2).matrices == [(1, 0, 0, 1), (1, 1, 0, 1)]
    assert gamma0_image(7, 1).size == 1


@pytest.mark.parametrize("m", range(1, 9))
def test_gamma0_matches_brute_force(m):
    for N in range(1, 9):
        assert gamma0_image(N, m).matrices == brute_gamma0(N, m)


def test_gamma0_closure_inverses_and_words():
    for N, m in [(3, 12), (4, 8), (5, 10), (6, 9)]:
        G = gamma0_image(N, m)
        assert G.is_closed() and G.has_inverses()
        assert gamma0_word_check(N, m, words=50)


def test_gamma0_guards():
    with pytest.raises(GuardError):
        gamma0_image(1, 65)
    with pytest.raises(ValidationError):
        gamma0_image(0, 5)


@pytest.mark.parametrize("m", range(1, 13))
def test_sl2_order(m):
    assert sl2_enumerate(m).size == sl2_order(m) == sp_order_formula(1, m)


def test_orbit_examples():
    G5 = gamma0_image(1, 5)
    pol = PolarizationModel(5)
    assert orbit((1, 0), G5, pol) == [(x, y) for x in range(5) for y in range(5) if (x, y) != (0, 0)]
    assert orbit(PairClass(0, 0), G5, pol) == [(0, 0)]
    assert orbit((1, 0), gamma0_image(2, 2), PolarizationModel(2)) == [(1, 0)]


@pytest.mark.parametrize("N, m", [(1, 6), (2, 8), (3, 9), (4, 12), (5, 10)])
def test_orbits_match_brute_force(N, m):
    G = gamma0_image(N, m)
    mats = brute_gamma0(N, m)
    for phi in sorted(units(m)):
        for psi in (None, 0, 1):
            pol = PolarizationModel(m, phi, psi)
            for start in [(1, 0), (0, 1), (2, 3 % m), (m - 1, 1)]:
                start = (start[0] % m, start[1] % m)
                assert orbit(start, G, pol) == brute_orbit(start, mats, m, pol.phi_multiplier, pol.psi_multiplier)


def test_orbit_stabilizer():
    for N, m in [(1, 5), (2, 6), (3, 9)]:
        G = gamma0_image(N, m)
        for phi in sorted(units(m)):
            pol = PolarizationModel(m, phi)
            assert pol.is_group_action
            for x, y in product(range(m), repeat=2):
                assert stabilizer_size((x, y), G, pol) * len(orbit((x, y), G, pol)) == G.size


def test_polarization_defaults():
    assert PolarizationModel(7, 3).psi_multiplier == 5
    assert PolarizationModel(8, 2).psi_multiplier == 0
    assert not PolarizationModel(8, 2).is_group_action


def test_orbit_modulus_mismatch():
    with pytest.raises(ValidationError):
        orbit((1, 0), gamma0_image(1, 5), PolarizationModel(7))


def test_polarized_examples():
    r = polarized_conclusion_check(1, 5)
    assert r.passed and [y for y, _ in r.witnesses[1]] == [1, 2, 3, 4]
    r9 = polarized_conclusion_check(3, 9, PolarizationModel(9, 1, 1))
    assert r9.passed
    for x, ws in r9.witnesses.items():
        for y, a in ws:
            assert a * x % 9 == y and gcd(a, order_mod(x, 9)) == 1
    assert polarized_conclusion_check(4, 1).passed


@pytest.mark.parametrize("m, n", [(1, 1), (2, 6), (3, 24), (5, 120), (12, 1152)])
def test_sp_genus1_sizes(m, n):
    S = sp_image(1, m)
    assert S.size == n
    assert np.array_equal(S.codes, sl2_enumerate(m))


@pytest.mark.parametrize("m", [2, 3])
def test_sp_genus2(m):
    S = sp_image(2, m)
    assert S.size == sp_order(2, m) == sp_order_formula(2, m)
    assert S.all_symplectic()


def test_sp_guards():
    with pytest.raises(ValidationError):
        sp_image(3, 2)
    with pytest.raises(GuardError):
        sp_image(2, 5)
