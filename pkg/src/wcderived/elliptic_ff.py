"""Elliptic curves and plane cubics over prime fields F_p, p > 3.

Point counting is plain enumeration (see :mod:`wcderived._kernels`).  A
smooth plane cubic with a rational point P is turned into a short
Weierstrass model by writing down functions x in L(2P), y in L(3P) as
ratios of forms and solving for the linear relation among
1, x, y, x^2, xy, y^2, x^3 modulo the cubic; the result is isomorphic to the
cubic, so point counts agree.  Text formats::

    wcurve <p> <a> <b>
    cubic <p> <c300> <c210> <c201> <c120> <c111> <c102> <c030> <c021> <c012> <c003>

with cubic coefficients in the monomial order x^3, x^2y, x^2z, xy^2, xyz,
xz^2, y^3, y^2z, yz^2, z^3.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import isqrt
from typing import NamedTuple, Sequence

import numpy as np
from sympy import isprime

from . import _guards, _kernels
from .errors import InvariantError, SingularCurveError, ValidationError

log = logging.getLogger(__name__)

Point = tuple[int, int, int]


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool):
        raise ValidationError(f"p must be an int, got {p!r}")
    _guards.check_modulus(p)
    if p <= 3 or not isprime(p):
        raise ValidationError(f"p must be a prime > 3, got {p}")


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = x^3 + a x + b over F_p."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        _check_prime(self.p)
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if self.discriminant == 0:
            raise SingularCurveError(f"y^2 = x^3 + {self.a}x + {self.b} is singular over F_{self.p}")

    @property
    def discriminant(self) -> int:
        p, a, b = self.p, self.a, self.b
        return -16 * (4 * a**3 + 27 * b**2) % p

    @property
    def j_invariant(self) -> int:
        p, a, b = self.p, self.a, self.b
        num = 1728 * 4 * pow(a, 3, p)
        den = (4 * pow(a, 3, p) + 27 * b * b) % p
        return num * pow(den, -1, p) % p

    def contains(self, x: int, y: int) -> bool:
        p = self.p
        return (y * y - x**3 - self.a * x - self.b) % p == 0

    def __str__(self):
        return f"wcurve {self.p} {self.a} {self.b}"


def curve_group_order(E: WeierstrassCurve) -> int:
    """#E(F_p): affine solutions plus the point at infinity."""
    _guards.check(E.p, _guards.POINT_COUNT_PRIME, "p for point counting")
    return 1 + _kernels.active.weierstrass_affine_count(E.p, E.a, E.b)


def hasse_ok(E: WeierstrassCurve, order: int | None = None) -> bool:
    """|#E - p - 1| <= 2 sqrt(p), decided in integers."""
    if order is None:
        order = curve_group_order(E)
    t = abs(order - E.p - 1)
    return t * t <= 4 * E.p


def aut_group_order(E: WeierstrassCurve) -> int:
    p = E.p
    j = E.j_invariant
    if j == 1728 % p:
        return sum(1 for u in range(1, p) if pow(u, 4, p) == 1)
    if j == 0:
        return sum(1 for u in range(1, p) if pow(u, 6, p) == 1)
    return 2


# ---------------------------------------------------------------------------
# ternary forms over F_p
# ---------------------------------------------------------------------------

def monomials(degree: int) -> list[tuple[int, int, int]]:
    """Degree-``degree`` monomials in descending lexicographic order."""
    return [(i, j, degree - i - j) for i in range(degree, -1, -1) for j in range(degree - i, -1, -1)]


CUBIC_MONOMIALS = monomials(3)
CONIC_MONOMIALS = monomials(2)

Form = dict  # {(i, j, k): coefficient mod p}


def _form(coeffs: Sequence[int], degree: int, p: int) -> Form:
    return {m: c % p for m, c in zip(monomials(degree), coeffs) if c % p}


def _form_mul(f: Form, g: Form, p: int) -> Form:
    out: Form = {}
    for (a, b, c), u in f.items():
        for (d, e, h), v in g.items():
            key = (a + d, b + e, c + h)
            out[key] = (out.get(key, 0) + u * v) % p
    return {k: v for k, v in out.items() if v}


def _form_eval(f: Form, pt: Sequence[int], p: int) -> int:
    x, y, z = pt
    return sum(c * pow(x, i, p) * pow(y, j, p) * pow(z, k, p) for (i, j, k), c in f.items()) % p


def _form_diff(f: Form, var: int, p: int) -> Form:
    out: Form = {}
    for mono, c in f.items():
        e = mono[var]
        if e == 0:
            continue
        m = list(mono)
        m[var] -= 1
        v = c * e % p
        if v:
            out[tuple(m)] = (out.get(tuple(m), 0) + v) % p
    return {k: v for k, v in out.items() if v}


def _form_vector(f: Form, degree: int) -> list[int]:
    return [f.get(m, 0) for m in monomials(degree)]


def _gradient(f: Form, pt: Sequence[int], p: int) -> tuple[int, int, int]:
    return tuple(_form_eval(_form_diff(f, v, p), pt, p) for v in range(3))


def _cross(u: Sequence[int], v: Sequence[int], p: int) -> tuple[int, int, int]:
    return ((u[1] * v[2] - u[2] * v[1]) % p, (u[2] * v[0] - u[0] * v[2]) % p, (u[0] * v[1] - u[1] * v[0]) % p)


def _proportional(u: Sequence[int], v: Sequence[int], p: int) -> bool:
    return _cross(u, v, p) == (0, 0, 0)


def normalize_point(pt: Sequence[int], p: int) -> Point:
    """Scale a projective point so its last nonzero coordinate is 1."""
    pt = [c % p for c in pt]
    for c in reversed(pt):
        if c:
            inv = pow(c, -1, p)
            return tuple(v * inv % p for v in pt)
    raise ValidationError("(0:0:0) is not a projective point")


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : rows . v = 0} over F_p, by Gauss-Jordan elimination."""
    mat = [[c % p for c in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, p)
        mat[r] = [v * inv % p for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][fc] % p
        basis.append(v)
    return basis


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    ncols = len(rows[0]) if rows else 0
    return ncols - len(nullspace_mod_p(rows, ncols, p))


# ---------------------------------------------------------------------------
# F_{p^k} for k <= 3, used only for the singular-point search
# ---------------------------------------------------------------------------

def _poly_mulmod(u, v, modpoly, p):
    k = len(modpoly) - 1
    prod = [0] * (2 * k - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                prod[i + j] = (prod[i + j] + a * b) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modpoly[i]) % p
    return prod[:k]


def irreducible_poly(p: int, k: int) -> list[int]:
    """Monic irreducible of degree k <= 3 (no roots suffices), low degree first."""
    if k == 1:
        return [0, 1]
    for idx in range(p**k):
        low = [(idx // p**i) % p for i in range(k)]
        poly = low + [1]
        if poly[0] == 0:
            continue
        if all(sum(c * pow(r, i, p) for i, c in enumerate(poly)) % p for r in range(p)):
            return poly
    raise InvariantError(f"no irreducible polynomial of degree {k} over F_{p}")


def _log_tables(p, k, modpoly):
    q = p**k

    def encode(v):
        return sum(c * p**i for i, c in enumerate(v))

    for cand in range(p, q):
        g = [(cand // p**i) % p for i in range(k)]
        exp = np.empty(q - 1, dtype=np.int64)
        cur = [1] + [0] * (k - 1)
        for e in range(q - 1):
            code = encode(cur)
            if e > 0 and code == 1:
                break
            exp[e] = code
            cur = _poly_mulmod(cur, g, modpoly, p)
        else:
            log = np.zeros(q, dtype=np.int64)
            log[exp] = np.arange(q - 1, dtype=np.int64)
            return log, exp
    raise InvariantError(f"no primitive element in F_{p}^{k}")


@lru_cache(maxsize=16)
def fq_tables(p: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Addition and multiplication tables of F_{p^k}.

    Elements are encoded by their base-p digit vectors (coefficients of
    1, t, t^2 modulo a fixed irreducible), so 0..p-1 is the prime field.
    """
    q = p**k
    modpoly = irreducible_poly(p, k)
    digits = np.array([[(e // p**i) % p for i in range(k)] for e in range(q)], dtype=np.int64)
    weights = p ** np.arange(k, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    if k == 1:
        ar = np.arange(q, dtype=np.int64)
        return add, ar[:, None] * ar[None, :] % p
    log_t, exp_t = _log_tables(p, k, modpoly)
    mul = exp_t[(log_t[:, None] + log_t[None, :]) % (q - 1)]
    mul[0, :] = 0
    mul[:, 0] = 0
    return add, mul


# ---------------------------------------------------------------------------
# plane cubics
# ---------------------------------------------------------------------------

def _singular_by_enumeration(p: int, coeffs: Sequence[int]) -> bool:
    f = _form(coeffs, 3, p)
    quads = np.array([_form_vector(_form_diff(f, v, p), 2) for v in range(3)], dtype=np.int64)
    for k in (2, 3):  # F_p sits inside both
        add, mul = fq_tables(p, k)
        if _kernels.active.fq_common_zero_count(add, mul, quads) > 0:
            return True
    return False


def _singular_by_groebner(p: int, coeffs: Sequence[int]) -> bool:
    from sympy import Poly, groebner, symbols

    x, y, z = symbols("x y z")
    f = _form(coeffs, 3, p)
    expr = sum(c * x**i * y**j * z**k for (i, j, k), c in f.items())
    partials = [expr.diff(v) for v in (x, y, z)]
    affine = [q.subs(z, 1) for q in partials if q.subs(z, 1) != 0]
    if list(groebner(affine, x, y, modulus=p).exprs) != [1]:
        return True
    line = [Poly(q.subs({z: 0, y: 1}), x, modulus=p) for q in partials]
    nonzero = [q for q in line if not q.is_zero]
    if not nonzero:
        return True
    g = nonzero[0]
    for q in nonzero[1:]:
        g = g.gcd(q)
    if g.degree() > 0:
        return True
    return all(_form_eval(_form_diff(f, v, p), (1, 0, 0), p) == 0 for v in range(3))


def cubic_is_smooth(p: int, coeffs: Sequence[int], method: str = "auto") -> bool:
    """No point over the algebraic closure where all three partials vanish.

    ``enumerate`` scans P^2(F_{p^2}) and P^2(F_{p^3}); any singular point of
    a plane cubic lives over a field of degree <= 3.  ``groebner`` decides
    the same question with a Groebner basis over F_p.  ``auto`` enumerates
    while p^3 is under the configured guard.
    """
    if all(c % p == 0 for c in coeffs):
        return False
    if method == "auto":
        method = "enumerate" if p**3 <= _guards.SINGULAR_ENUM_FIELD * _guards.guard_scale() else "groebner"
    if method == "enumerate":
        return not _singular_by_enumeration(p, coeffs)
    if method == "groebner":
        return not _singular_by_groebner(p, coeffs)
    raise ValidationError(f"unknown smoothness method {method!r}")


@dataclass(frozen=True)
class PlaneCubic:
    p: int
    coeffs: tuple[int, ...]
    check_smooth: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        _check_prime(self.p)
        if len(self.coeffs) != 10:
            raise ValidationError(f"a plane cubic needs 10 coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) % self.p for c in self.coeffs))
        if self.check_smooth and not cubic_is_smooth(self.p, self.coeffs):
            raise SingularCurveError(f"cubic {self.coeffs} over F_{self.p} is singular")

    @cached_property
    def form(self) -> Form:
        return _form(self.coeffs, 3, self.p)

    def __call__(self, pt: Sequence[int]) -> int:
        return _form_eval(self.form, pt, self.p)

    def contains(self, pt: Sequence[int]) -> bool:
        return any(c % self.p for c in pt) and self(pt) == 0

    def __str__(self):
        return "cubic " + " ".join(str(c) for c in (self.p, *self.coeffs))


def cubic_points(C: PlaneCubic) -> list[Point]:
    _guards.check(C.p * C.p, 10**7, "p^2 for projective enumeration")
    pts = _kernels.active.cubic_projective_points(C.p, np.array(C.coeffs, dtype=np.int64))
    return sorted(tuple(int(v) for v in row) for row in pts)


def cubic_point_count(C: PlaneCubic) -> int:
    return len(cubic_points(C))


def cubic_rational_point(C: PlaneCubic) -> Point | None:
    """Some F_p-rational point of C (the least in normalized order), or None."""
    pts = cubic_points(C)
    return pts[0] if pts else None


class Reduction(NamedTuple):
    curve: WeierstrassCurve
    method: str  # "flex", "nonflex" or "search"


def _third_point(f: Form, P: Sequence[int], v: Sequence[int], p: int):
    """Third intersection of the line P + lam*v with the cubic, P a double root.

    Returns the point, or None when P is a triple root (a flex).
    """
    # g(lam) = g2 lam^2 + g3 lam^3 since g(0) = g'(0) = 0
    g3 = _form_eval(f, v, p)
    g2 = (_form_eval(f, [a + b for a, b in zip(P, v)], p) - g3) % p
    if g2 == 0 and g3 == 0:
        raise InvariantError("line contained in a smooth cubic")
    if g2 == 0:
        return None
    if g3 == 0:
        return normalize_point(v, p)
    lam = -g2 * pow(g3, -1, p) % p
    return normalize_point([(a + lam * b) for a, b in zip(P, v)], p)


def _other_point_on_line(line: Sequence[int], P: Sequence[int], p: int):
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        w = _cross(line, e, p)
        if any(w) and not _proportional(w, P, p):
            return w
    raise InvariantError("degenerate line")


def _lines_through(P, p):
    std = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    out = [e for e, c in zip(std, P) if c % p == 0]
    out += [_cross(P, e, p) for e in std]
    return [l for l in out if any(l)]


def _relation_to_weierstrass(f: Form, den: Form, xnum: Form, ynum: Form, p: int):
    """Solve for the cubic relation satisfied by x = xnum/den, y = ynum/den."""
    d = next(sum(m) for m in den)
    deg = 3 * d
    one = {(0, 0, 0): 1}

    def pw(g, n):
        out = one
        for _ in range(n):
            out = _form_mul(out, g, p)
        return out

    # 1, x, y, x^2, xy, y^2, x^3, each multiplied through by den^3
    terms = [
        pw(den, 3),
        _form_mul(xnum, pw(den, 2), p),
        _form_mul(ynum, pw(den, 2), p),
        _form_mul(pw(xnum, 2), den, p),
        _form_mul(_form_mul(xnum, ynum, p), den, p),
        _form_mul(pw(ynum, 2), den, p),
        pw(xnum, 3),
    ]
    multipliers = monomials(deg - 3)
    cols = [_form_vector(t, deg) for t in terms]
    cols += [_form_vector(_form_mul(f, {m: 1}, p), deg) for m in multipliers]
    nrows = len(monomials(deg))
    rows = [[col[r] for col in cols] for r in range(nrows)]
    null = nullspace_mod_p(rows, len(cols), p)
    if len(null) != 1:
        return None
    lam = null[0][:7]
    A, B, Cc = lam[5], lam[4], lam[2]
    D, E, F_, G = (-lam[6]) % p, (-lam[3]) % p, (-lam[1]) % p, (-lam[0]) % p
    if A == 0 or D == 0:
        return None
    # x = alpha X, y = beta Y with alpha = beta = A/D makes both leading terms A^3/D^2
    alpha = A * pow(D, -1, p) % p
    K = pow(A, 3, p) * pow(D, -2, p) % p
    Kinv = pow(K, -1, p)
    a1 = B * alpha * alpha * Kinv % p
    a3 = Cc * alpha * Kinv % p
    a2 = E * alpha * alpha * Kinv % p
    a4 = F_ * alpha * Kinv % p
    a6 = G * Kinv % p
    b2 = (a1 * a1 + 4 * a2) % p
    b4 = (2 * a4 + a1 * a3) % p
    b6 = (a3 * a3 + 4 * a6) % p
    c4 = (b2 * b2 - 24 * b4) % p
    c6 = (-pow(b2, 3, p) + 36 * b2 * b4 - 216 * b6) % p
    a = -c4 * pow(48, -1, p) % p
    b = -c6 * pow(864, -1, p) % p
    if (4 * a**3 + 27 * b * b) % p == 0:
        return None
    return a, b


def weierstrass_reduction(C: PlaneCubic, P: Sequence[int]) -> Reduction:
    """Short Weierstrass model of a pointed smooth cubic, plus the route taken."""
    p = C.p
    if not C.contains(P):
        raise ValidationError(f"{tuple(P)} is not a point of {C}")
    P = normalize_point(P, p)
    f = C.form
    t = _gradient(f, P, p)
    if not any(t):
        raise SingularCurveError(f"{P} is a singular point of {C}")
    v = _other_point_on_line(t, P, p)
    Q = _third_point(f, P, v, p)
    t_form = _form(t, 1, p)
    result = None
    if Q is None:
        method = "flex"
        ell = next(l for l in _lines_through(P, p) if not _proportional(l, t, p))
        m = next(e for e, c in zip(((1, 0, 0), (0, 1, 0), (0, 0, 1)), P) if c)
        result = _relation_to_weierstrass(f, t_form, _form(ell, 1, p), _form(m, 1, p), p)
    else:
        method = "nonflex"
        s = _gradient(f, Q, p)
        vq = _other_point_on_line(s, Q, p)
        # conics c with c(P) = 0 and c . C >= 2Q
        rows = []
        rows.append([_form_eval({mono: 1}, P, p) for mono in CONIC_MONOMIALS])
        rows.append([_form_eval({mono: 1}, Q, p) for mono in CONIC_MONOMIALS])
        rows.append([sum(g * w for g, w in zip(_gradient({mono: 1}, Q, p), vq)) % p for mono in CONIC_MONOMIALS])
        space = nullspace_mod_p(rows, 6, p)
        t2 = _form_vector(_form_mul(t_form, t_form, p), 2)
        ts = _form_vector(_form_mul(t_form, _form(s, 1, p), p), 2)
        c3 = next((c for c in space if rank_mod_p([t2, ts, c], p) == 3), None)
        if c3 is not None:
            den = _form_mul(t_form, t_form, p)
            result = _relation_to_weierstrass(f, den, _form(ts, 2, p), _form(c3, 2, p), p)
    if result is None:
        log.info("falling back to point-count search for %s", C)
        return Reduction(_search_by_count(C), "search")
    E = WeierstrassCurve(p, *result)
    if curve_group_order(E) != cubic_point_count(C):
        raise InvariantError(f"reduction of {C} gave {E} with a different point count")
    return Reduction(E, method)


def weierstrass_from_cubic(C: PlaneCubic, P: Sequence[int]) -> WeierstrassCurve:
    return weierstrass_reduction(C, P).curve


def _search_by_count(C: PlaneCubic) -> WeierstrassCurve:
    p = C.p
    _guards.check(p, 97, "p for the Weierstrass search fallback")
    target = cubic_point_count(C)
    for a in range(p):
        for b in range(p):
            if (4 * a**3 + 27 * b * b) % p == 0:
                continue
            E = WeierstrassCurve(p, a, b)
            if curve_group_order(E) == target:
                return E
    raise InvariantError(f"no short Weierstrass curve over F_{p} has {target} points")


def weierstrass_as_cubic(E: WeierstrassCurve) -> PlaneCubic:
    """y^2 z = x^3 + a x z^2 + b z^3 as a plane cubic."""
    p = E.p
    c = [0] * 10
    c[0] = -1 % p  # x^3
    c[5] = -E.a % p  # xz^2
    c[9] = -E.b % p  # z^3
    c[7] = 1  # y^2 z
    return PlaneCubic(p, tuple(c))


def hasse_interval(p: int) -> tuple[int, int]:
    r = isqrt(4 * p)
    lo = p + 1 - r
    hi = p + 1 + r
    return lo, hi


def parse_curve(text: str) -> WeierstrassCurve | PlaneCubic:
    parts = text.split()
    if not parts:
        raise ValidationError("empty curve spec")
    try:
        nums = [int(v) for v in parts[1:]]
    except ValueError:
        raise ValidationError(f"non-integer field in curve spec {text!r}") from None
    if parts[0] == "wcurve":
        if len(nums) != 3:
            raise ValidationError("expected: wcurve <p> <a> <b>")
        return WeierstrassCurve(*nums)
    if parts[0] == "cubic":
        if len(nums) != 11:
            raise ValidationError("expected: cubic <p> followed by 10 coefficients")
        return PlaneCubic(nums[0], tuple(nums[1:]))
    raise ValidationError(f"unknown curve kind {parts[0]!r}")
