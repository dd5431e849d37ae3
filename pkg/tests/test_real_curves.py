import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import real_root_count
from wcderived.errors import SingularCurveError, ValidationError
from wcderived.real_curves import (
    RationalCurve,
    RationalPolynomial,
    format_rational,
    h1_real_report,
    h1_real_size,
    parse_rational,
    random_rational_curve,
    real_components,
    real_two_torsion,
    sturm_real_roots,
    two_torsion_gmodule,
)
from wcderived.cohomology import h1
from wcderived.torsor_model import WCModel, classify


@pytest.mark.parametrize("coeffs, n", [([0, -1, 0, 1], 3), ([0, 1, 0, 1], 1), ([2, -2, 0, 1], 1)])
def test_sturm_examples(coeffs, n):
    assert sturm_real_roots(RationalPolynomial(coeffs)) == n


def test_sturm_rejects_non_squarefree_and_constants():
    with pytest.raises(ValidationError):
        sturm_real_roots(RationalPolynomial([0, 0, 0, 1]))
    with pytest.raises(ValidationError):
        sturm_real_roots(RationalPolynomial([3]))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20)), min_size=2, max_size=6))
def test_sturm_matches_sympy(coeffs):
    f = RationalPolynomial(coeffs)
    if f.degree < 1 or f.gcd(f.derivative()).degree > 0:
        return
    assert sturm_real_roots(f) == real_root_count(coeffs)


def test_polynomial_division():
    f = RationalPolynomial([-1, 0, 0, 1])
    g = RationalPolynomial([-1, 1])
    q, r = f.divmod(g)
    assert q == RationalPolynomial([1, 1, 1]) and r.is_zero()
    assert f.gcd(g).degree == 1


@pytest.mark.parametrize("a, b, tag", [(-1, 0, "full"), (1, 0, "half")])
def test_two_torsion_examples(a, b, tag):
    assert real_two_torsion(RationalCurve(a, b)) == tag


@pytest.mark.parametrize("a, b", [(0, 0), (-3, 2)])
def test_singular_rejected(a, b):
    with pytest.raises(SingularCurveError):
        RationalCurve(a, b)


def test_h1_real_examples():
    assert h1_real_size(RationalCurve(-1, 0)) == 2
    assert h1_real_size(RationalCurve(1, 0)) == 1


def test_h1_of_two_torsion_modules():
    assert h1(two_torsion_gmodule("full")).size == 4
    assert h1(two_torsion_gmodule("half")).size == 1
    with pytest.raises(ValidationError):
        two_torsion_gmodule("none")


def test_random_curves_sturm_vs_discriminant():
    rng = random.Random(0)
    for _ in range(300):
        E = random_rational_curve(rng)
        full = real_two_torsion(E) == "full"
        assert full == (E.discriminant > 0)
        assert real_components(E) == (2 if full else 1)
        assert h1_real_size(E) == (2 if full else 1)


def test_real_classifier_separates_classes():
    # over R the classes of H^1 = Z/2 are alone in their cyclic subgroups
    r = classify(WCModel(2, {1}))
    assert r.iso_classes == r.derived_classes == [[0], [1]]


def test_report_has_no_floats():
    rep = h1_real_report(RationalCurve(Fraction(-7, 3), Fraction(1, 5)))
    assert not any(isinstance(v, float) for v in rep.values())
    assert rep["discriminant"].count("/") == 1


def test_parse_and_format():
    assert parse_rational("-1/1") == -1 and parse_rational("3") == 3
    assert format_rational(Fraction(6, 4)) == "3/2"
    E = RationalCurve.parse("rcurve a=-1/1 b=0/1")
    assert E == RationalCurve(-1, 0) and str(E) == "rcurve a=-1/1 b=0/1"
    for bad in ["rcurve a=1", "rcurve a=x b=1", "rcurve a=1/0 b=1", "rcurve a=1 b=2 c=3"]:
        with pytest.raises(ValidationError):
            RationalCurve.parse(bad)
