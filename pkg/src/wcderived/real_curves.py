"""|H^1(R, E)| for y^2 = x^3 + ax + b with rational a, b.

Root counting is exact (Sturm sequences over ``fractions.Fraction``).  The
size comes from the Kummer sequence for multiplication by 2,

    0 -> E(R)/2E(R) -> H^1(R, E[2]) -> H^1(R, E) -> 0

(H^1(R, E) is killed by 2, so it equals its 2-torsion).  H^1(R, E[2]) is
computed by :mod:`wcderived.cohomology` on the Galois module E[2]: trivial
action when all three 2-torsion points are real, the swap of the two
complex-conjugate points otherwise.  E(R)/2E(R) has order 2 when E(R) has
two components (discriminant > 0) and 1 when it is connected; the identity
component is a circle, which is 2-divisible.  This turns the upper bound
|H^1(R, E)| <= 2 into the exact value 2 in the full-torsion case.

Curve spec: ``rcurve a=<num/den> b=<num/den>``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import FiniteGroup, GModule, h1
from .errors import InvariantError, SingularCurveError, ValidationError
from .modarith import FiniteAbelianGroup


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a rational number: {text!r}") from None


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class RationalPolynomial:
    """Dense polynomial with Fraction coefficients, lowest degree first."""

    def __init__(self, coeffs: Sequence):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __neg__(self):
        return RationalPolynomial([-c for c in self.coeffs])

    def divmod(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 1)
        while len(rem) >= len(other.coeffs) and any(rem):
            shift = len(rem) - len(other.coeffs)
            f = rem[-1] / other.lead
            quot[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPolynomial(quot), RationalPolynomial(rem)

    def gcd(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a

    def __eq__(self, other):
        return isinstance(other, RationalPolynomial) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"RationalPolynomial({[format_rational(c) for c in self.coeffs]})"


def sturm_sequence(f: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        seq.append(-seq[-2].divmod(seq[-1])[1])
    return [s for s in seq if not s.is_zero()]


def _variations(signs: list[int]) -> int:
    s = [v for v in signs if v]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def sturm_real_roots(f: RationalPolynomial) -> int:
    """Number of distinct real roots of a squarefree f."""
    if f.degree < 1:
        raise ValidationError("need a polynomial of degree >= 1")
    if f.gcd(f.derivative()).degree > 0:
        raise ValidationError("polynomial is not squarefree")
    seq = sturm_sequence(f)
    at_pos_inf = [_sign(s.lead) for s in seq]
    at_neg_inf = [_sign(s.lead) * (-1) ** s.degree for s in seq]
    return _variations(at_neg_inf) - _variations(at_pos_inf)


@dataclass(frozen=True)
class RationalCurve:
    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        if self.discriminant == 0:
            raise SingularCurveError(f"y^2 = x^3 + ({self.a})x + ({self.b}) is singular")

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def two_division_polynomial(self) -> RationalPolynomial:
        return RationalPolynomial([self.b, self.a, 0, 1])

    @classmethod
    def parse(cls, spec: str) -> "RationalCurve":
        parts = spec.split()
        if parts and parts[0] == "rcurve":
            parts = parts[1:]
        kv = dict(p.split("=", 1) for p in parts if "=" in p)
        if set(kv) != {"a", "b"} or len(parts) != 2:
            raise ValidationError(f"expected 'rcurve a=<num/den> b=<num/den>', got {spec!r}")
        return cls(parse_rational(kv["a"]), parse_rational(kv["b"]))

    def __str__(self):
        return f"rcurve a={format_rational(self.a)} b={format_rational(self.b)}"


def real_two_torsion(E: RationalCurve) -> str:
    """``full`` for E[2](R) = (Z/2)^2, ``half`` for Z/2."""
    roots = sturm_real_roots(E.two_division_polynomial())
    if roots == 3:
        return "full"
    if roots == 1:
        return "half"
    raise InvariantError(f"a real cubic has {roots} real roots")


def two_torsion_gmodule(tag: str) -> GModule:
    """E[2] as a module over Gal(C/R) = C2, basis of two nonzero points.

    ``half``: basis (b, c) with c the conjugate of b, so complex conjugation
    swaps the basis vectors and fixes a = b + c.
    """
    C2 = FiniteGroup.cyclic(2)
    V = FiniteAbelianGroup([2, 2])
    if tag == "full":
        return GModule.trivial_action(C2, V)
    if tag == "half":
        return GModule(C2, V, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    raise ValidationError(f"unknown 2-torsion tag {tag!r}")


def real_components(E: RationalCurve) -> int:
    return 2 if E.discriminant > 0 else 1


def h1_real_size(E: RationalCurve) -> int:
    tag = real_two_torsion(E)
    h1_e2 = h1(two_torsion_gmodule(tag)).size
    quotient = real_components(E)  # |E(R)/2E(R)|
    if h1_e2 % quotient:
        raise InvariantError("E(R)/2E(R) does not embed in H^1(R, E[2])")
    size = h1_e2 // quotient
    if size not in (1, 2):
        raise InvariantError(f"|H^1(R, E)| = {size} violates the bound 2")
    return size


def h1_real_report(E: RationalCurve) -> dict:
    tag = real_two_torsion(E)
    roots = sturm_real_roots(E.two_division_polynomial())
    h = h1(two_torsion_gmodule(tag))
    return {
        "curve": str(E),
        "discriminant": format_rational(E.discriminant),
        "real_roots": roots,
        "two_torsion": tag,
        "h1_e2_size": h.size,
        "e_mod_2e_size": real_components(E),
        "h1_size": h1_real_size(E),
    }


def random_rational_curve(rng: random.Random, bound: int = 50) -> RationalCurve:
    """A nonsingular curve with small random rational coefficients."""
    while True:
        a = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        b = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if 4 * a**3 + 27 * b**2 != 0:
            return RationalCurve(a, b)
