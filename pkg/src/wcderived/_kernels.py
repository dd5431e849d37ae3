"""Enumeration kernels: numba ``@njit`` versions with pure-numpy twins.

The backend is picked once at import.  Set ``WCDERIVED_PURE_NUMPY=1`` (or
run without numba installed) to use the numpy path.  Both implementations
stay importable through :data:`numba_impl` and :data:`numpy_impl` so the
benchmark and the tests can compare them directly.

All kernels take plain int64 arrays and return int64 arrays or ints; the
callers in the public modules own validation and guards.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

PURE_NUMPY = os.environ.get("WCDERIVED_PURE_NUMPY", "").strip().lower() in {"1", "true", "yes", "on"}

# quadratic monomials, in this order, for the partial derivatives of a cubic
QUAD_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _np_weierstrass_affine_count(p, a, b):
    ys = np.arange(p, dtype=np.int64)
    sq_count = np.bincount(ys * ys % p, minlength=p)
    xs = np.arange(p, dtype=np.int64)
    rhs = (xs * xs % p * xs + a * xs + b) % p
    return int(sq_count[rhs].sum())


def _np_eval_cubic(p, coeffs, x, y, z):
    # coeffs in the order x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3
    c = coeffs
    x2, y2, z2 = x * x % p, y * y % p, z * z % p
    v = (c[0] * x2 % p * x + c[1] * x2 % p * y + c[2] * x2 % p * z
         + c[3] * y2 % p * x + c[4] * (x * y % p) % p * z + c[5] * z2 % p * x
         + c[6] * y2 % p * y + c[7] * y2 % p * z + c[8] * z2 % p * y
         + c[9] * z2 % p * z)
    return v % p


def _np_cubic_projective_points(p, coeffs):
    coeffs = np.asarray(coeffs, dtype=np.int64)
    xs, ys = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    ones = np.ones_like(xs)
    hits = _np_eval_cubic(p, coeffs, xs, ys, ones) == 0
    affine = np.stack([xs[hits], ys[hits], ones[hits]], axis=1)
    xl = np.arange(p, dtype=np.int64)
    line = _np_eval_cubic(p, coeffs, xl, np.ones_like(xl), np.zeros_like(xl)) == 0
    at_inf = np.stack([xl[line], np.ones(line.sum(), dtype=np.int64), np.zeros(line.sum(), dtype=np.int64)], axis=1)
    corner = np.array([[1, 0, 0]], dtype=np.int64)
    parts = [affine, at_inf]
    if coeffs[0] % p == 0:
        parts.append(corner)
    return np.concatenate(parts, axis=0).reshape(-1, 3)


def _np_fq_quads_vanish(add, mul, quads, x, y, z):
    ok = np.ones(np.broadcast(x, y, z).shape, dtype=bool)
    terms = (mul[x, x], mul[x, y], mul[x, z], mul[y, y], mul[y, z], mul[z, z])
    for row in quads:
        acc = np.zeros(ok.shape, dtype=np.int64)
        for coef, t in zip(row, terms):
            if coef:
                acc = add[acc, mul[coef, t]]
        ok &= acc == 0
    return ok


def _np_fq_common_zero_count(add, mul, quads):
    """Points of P^2(F_q) where all three quadratic forms vanish.

    ``add``/``mul`` are the q x q operation tables of F_q; the forms have
    coefficients in the prime subfield, encoded as 0..p-1.
    """
    q = add.shape[0]
    quads = np.asarray(quads, dtype=np.int64)
    rows = max(1, (1 << 20) // q)
    count = 0
    for x0 in range(0, q, rows):
        xv, yv = np.meshgrid(np.arange(x0, min(x0 + rows, q), dtype=np.int64),
                             np.arange(q, dtype=np.int64), indexing="ij")
        xv, yv = xv.ravel(), yv.ravel()
        count += int(_np_fq_quads_vanish(add, mul, quads, xv, yv, np.ones_like(xv)).sum())
    xs = np.arange(q, dtype=np.int64)
    count += int(_np_fq_quads_vanish(add, mul, quads, xs, np.ones_like(xs), np.zeros_like(xs)).sum())
    corner = np.array([1]), np.array([0]), np.array([0])
    count += int(_np_fq_quads_vanish(add, mul, quads, *corner).sum())
    return count


def _np_filter_cocycles(act, add, mul, identity, chunk=1 << 16):
    """All normalized maps G -> M satisfying rho(gh) = g.rho(h) + rho(g).

    Candidates are indexed by mixed-radix numbers over the non-identity
    group elements and decoded chunk by chunk.
    """
    n_g, n_m = act.shape
    free = [g for g in range(n_g) if g != identity]
    total = n_m ** len(free)
    found = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        vals = np.zeros((idx.size, n_g), dtype=np.int64)
        rest = idx.copy()
        for g in reversed(free):
            vals[:, g] = rest % n_m
            rest //= n_m
        ok = np.ones(idx.size, dtype=bool)
        for g in range(n_g):
            for h in range(n_g):
                gh = mul[g, h]
                ok &= vals[:, gh] == add[act[g, vals[:, h]], vals[:, g]]
        found.append(vals[ok])
    if not found:
        return np.zeros((0, n_g), dtype=np.int64)
    return np.concatenate(found, axis=0)


def _np_multiset_images(tw, add, multisets, zero):
    """Class (sum) of each multiset and of its image under every group element."""
    n_g = tw.shape[0]
    k, d = multisets.shape
    sums = np.full(k, zero, dtype=np.int64)
    for j in range(d):
        sums = add[sums, multisets[:, j]]
    images = np.empty((n_g, k), dtype=np.int64)
    for g in range(n_g):
        s = np.full(k, zero, dtype=np.int64)
        for j in range(d):
            s = add[s, tw[g, multisets[:, j]]]
        images[g] = s
    return sums, images


numpy_impl = SimpleNamespace(
    name="numpy",
    weierstrass_affine_count=_np_weierstrass_affine_count,
    cubic_projective_points=_np_cubic_projective_points,
    fq_common_zero_count=_np_fq_common_zero_count,
    filter_cocycles=_np_filter_cocycles,
    multiset_images=_np_multiset_images,
)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_weierstrass_affine_count(p, a, b):
        sq_count = np.zeros(p, dtype=np.int64)
        for y in range(p):
            sq_count[y * y % p] += 1
        total = 0
        for x in range(p):
            rhs = (x * x % p * x + a * x + b) % p
            total += sq_count[rhs]
        return total

    @njit(cache=True)
    def _nb_eval_cubic(p, c, x, y, z):
        x2 = x * x % p
        y2 = y * y % p
        z2 = z * z % p
        v = c[0] * x2 % p * x
        v += c[1] * x2 % p * y
        v += c[2] * x2 % p * z
        v += c[3] * y2 % p * x
        v += c[4] * (x * y % p) % p * z
        v += c[5] * z2 % p * x
        v += c[6] * y2 % p * y
        v += c[7] * y2 % p * z
        v += c[8] * z2 % p * y
        v += c[9] * z2 % p * z
        return v % p

    @njit(cache=True)
    def _nb_cubic_projective_points_impl(p, c):
        out = np.empty((p * p + p + 1, 3), dtype=np.int64)
        n = 0
        for x in range(p):
            for y in range(p):
                if _nb_eval_cubic(p, c, x, y, 1) == 0:
                    out[n, 0] = x
                    out[n, 1] = y
                    out[n, 2] = 1
                    n += 1
        for x in range(p):
            if _nb_eval_cubic(p, c, x, 1, 0) == 0:
                out[n, 0] = x
                out[n, 1] = 1
                out[n, 2] = 0
                n += 1
        if c[0] % p == 0:
            out[n, 0] = 1
            out[n, 1] = 0
            out[n, 2] = 0
            n += 1
        return out[:n].copy()

    def _nb_cubic_projective_points(p, coeffs):
        return _nb_cubic_projective_points_impl(p, np.asarray(coeffs, dtype=np.int64))

    @njit(cache=True)
    def _nb_fq_all_vanish(add, mul, quads, x, y, z):
        t0 = mul[x, x]
        t1 = mul[x, y]
        t2 = mul[x, z]
        t3 = mul[y, y]
        t4 = mul[y, z]
        t5 = mul[z, z]
        for r in range(quads.shape[0]):
            c = quads[r]
            acc = add[mul[c[0], t0], mul[c[1], t1]]
            acc = add[acc, mul[c[2], t2]]
            acc = add[acc, mul[c[3], t3]]
            acc = add[acc, mul[c[4], t4]]
            acc = add[acc, mul[c[5], t5]]
            if acc != 0:
                return False
        return True

    @njit(cache=True)
    def _nb_fq_common_zero_count_impl(add, mul, quads):
        q = add.shape[0]
        count = 0
        for x in range(q):
            for y in range(q):
                if _nb_fq_all_vanish(add, mul, quads, x, y, 1):
                    count += 1
        for x in range(q):
            if _nb_fq_all_vanish(add, mul, quads, x, 1, 0):
                count += 1
        if _nb_fq_all_vanish(add, mul, quads, 1, 0, 0):
            count += 1
        return count

    def _nb_fq_common_zero_count(add, mul, quads):
        return int(_nb_fq_common_zero_count_impl(
            np.ascontiguousarray(add), np.ascontiguousarray(mul), np.asarray(quads, dtype=np.int64)))

    @njit(cache=True)
    def _nb_filter_cocycles_impl(act, add, mul, identity):
        n_g, n_m = act.shape
        n_free = n_g - 1
        total = 1
        for _ in range(n_free):
            total *= n_m
        vals = np.zeros(n_g, dtype=np.int64)
        buf = np.empty((16, n_g), dtype=np.int64)
        n = 0
        for idx in range(total):
            rest = idx
            for g in range(n_g - 1, -1, -1):
                if g == identity:
                    vals[g] = 0
                else:
                    vals[g] = rest % n_m
                    rest //= n_m
            ok = True
            for g in range(n_g):
                if not ok:
                    break
                for h in range(n_g):
                    if vals[mul[g, h]] != add[act[g, vals[h]], vals[g]]:
                        ok = False
                        break
            if ok:
                if n == buf.shape[0]:
                    bigger = np.empty((2 * n, n_g), dtype=np.int64)
                    bigger[:n] = buf
                    buf = bigger
                buf[n] = vals
                n += 1
        return buf[:n].copy()

    def _nb_filter_cocycles(act, add, mul, identity):
        return _nb_filter_cocycles_impl(
            np.ascontiguousarray(act, dtype=np.int64), np.ascontiguousarray(add, dtype=np.int64),
            np.ascontiguousarray(mul, dtype=np.int64), int(identity))

    @njit(cache=True)
    def _nb_multiset_images_impl(tw, add, multisets, zero):
        n_g = tw.shape[0]
        k, d = multisets.shape
        sums = np.empty(k, dtype=np.int64)
        images = np.empty((n_g, k), dtype=np.int64)
        for i in range(k):
            s = zero
            for j in range(d):
                s = add[s, multisets[i, j]]
            sums[i] = s
            for g in range(n_g):
                t = zero
                for j in range(d):
                    t = add[t, tw[g, multisets[i, j]]]
                images[g, i] = t
        return sums, images

    def _nb_multiset_images(tw, add, multisets, zero):
        return _nb_multiset_images_impl(
            np.ascontiguousarray(tw, dtype=np.int64), np.ascontiguousarray(add, dtype=np.int64),
            np.ascontiguousarray(multisets, dtype=np.int64), int(zero))

    numba_impl = SimpleNamespace(
        name="numba",
        weierstrass_affine_count=lambda p, a, b: int(_nb_weierstrass_affine_count(p, a, b)),
        cubic_projective_points=_nb_cubic_projective_points,
        fq_common_zero_count=_nb_fq_common_zero_count,
        filter_cocycles=_nb_filter_cocycles,
        multiset_images=_nb_multiset_images,
    )
else:  # pragma: no cover
    numba_impl = None


active = numpy_impl if (PURE_NUMPY or numba_impl is None) else numba_impl
BACKEND = active.name
