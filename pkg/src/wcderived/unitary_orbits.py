"""Orbits of mod-m images of Gamma_0(N) and Sp_2g(Z) on pairs of torsor classes.

A pair (x, y) stands for a class in H^1(k, A) x H^1(k, A^), each factor
modelled as Z/m.  A matrix [[a, b], [c, d]] acts through the coefficient
action

    (x, y) -> (a*x + b*psi(y), c*phi(x) + d*y)

where phi is the multiplier of the polarization A -> A^ on H^1 and psi a
multiplier for the reverse map.  When phi*psi = 1 mod m this is the
standard action conjugated by diag(1, phi), hence a group action.

The mod-m image of Gamma_0(N) is taken as the full congruence set
{g in SL_2(Z/m) : c = 0 mod gcd(N, m)}; :func:`gamma0_word_check` lifts
random words in T, L_N = [[1, 0], [N, 1]] and -I to SL_2(Z) and confirms
their reductions land in it.

Matrices over Z/m are encoded as integers (row-major base-m digits) so that
sets of matrices are sorted int64 arrays.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np
from sympy import primefactors

from . import _guards
from .errors import InvariantError, ValidationError
from .modarith import element_order, unit_group


# ---------------------------------------------------------------------------
# matrix encoding
# ---------------------------------------------------------------------------

def _encode(mats: np.ndarray, m: int) -> np.ndarray:
    """(K, n, n) entries mod m -> (K,) int64 codes."""
    flat = mats.reshape(mats.shape[0], -1) % m
    codes = np.zeros(flat.shape[0], dtype=np.int64)
    for j in range(flat.shape[1]):
        codes = codes * m + flat[:, j]
    return codes


def _decode(codes: np.ndarray, m: int, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64).copy()
    out = np.empty((codes.size, n * n), dtype=np.int64)
    for j in range(n * n - 1, -1, -1):
        out[:, j] = codes % m
        codes //= m
    return out.reshape(-1, n, n)


def _closure(gens: np.ndarray, m: int, limit: int) -> np.ndarray:
    """Sorted codes of the monoid generated by ``gens`` (which, being finite, is a group)."""
    n = gens.shape[1]
    ident = np.eye(n, dtype=np.int64)[None]
    visited = _encode(ident, m)
    frontier = ident
    while frontier.shape[0]:
        prods = (frontier[:, None] @ gens[None]) % m
        prods = prods.reshape(-1, n, n)
        codes, first = np.unique(_encode(prods, m), return_index=True)
        fresh = ~np.isin(codes, visited, assume_unique=True)
        visited = np.union1d(visited, codes[fresh])
        if visited.size > limit:
            raise InvariantError(f"closure exceeded {limit} elements")
        frontier = prods[first[fresh]]
    return visited


def sl2_order(m: int) -> int:
    return round(m**3 * prod(1 - 1 / p**2 for p in primefactors(m))) if m > 1 else 1


def sp_order(genus: int, m: int) -> int:
    """|Sp_2g(Z/m)| = m^(g(2g+1)) prod_{p | m} prod_i (1 - p^(-2i)), in integers."""
    if m == 1:
        return 1
    num = m ** (genus * (2 * genus + 1))
    for p in primefactors(m):
        for i in range(1, genus + 1):
            num = num // p ** (2 * i) * (p ** (2 * i) - 1)
    return num


# ---------------------------------------------------------------------------
# Gamma_0(N) mod m
# ---------------------------------------------------------------------------

@dataclass
class CongruenceImage:
    N: int
    m: int
    codes: np.ndarray  # sorted codes of 2x2 matrices over Z/m
    generators: np.ndarray = field(repr=False)  # (k, 2, 2) found while verifying closure

    @property
    def size(self) -> int:
        return int(self.codes.size)

    @property
    def arrays(self) -> np.ndarray:
        return _decode(self.codes, self.m, 2)

    @property
    def matrices(self) -> list[tuple[int, int, int, int]]:
        return [tuple(int(v) for v in A.ravel()) for A in self.arrays]

    def __contains__(self, mat) -> bool:
        code = _encode(np.asarray(mat, dtype=np.int64).reshape(1, 2, 2), self.m)[0]
        i = np.searchsorted(self.codes, code)
        return bool(i < self.codes.size and self.codes[i] == code)

    def is_closed(self) -> bool:
        A = self.arrays
        prods = _encode(((A[:, None] @ self.generators[None]) % self.m).reshape(-1, 2, 2), self.m)
        return bool(np.isin(prods, self.codes).all())

    def has_inverses(self) -> bool:
        A = self.arrays
        inv = np.stack([A[:, 1, 1], -A[:, 0, 1], -A[:, 1, 0], A[:, 0, 0]], axis=1).reshape(-1, 2, 2)
        return bool(np.isin(_encode(inv, self.m), self.codes).all())


def _congruence_set(N: int, m: int) -> np.ndarray:
    g = gcd(N, m)
    r = np.arange(m, dtype=np.int64)
    cs = r[r % g == 0]
    b, c, d = np.meshgrid(r, cs, r, indexing="ij")
    b, c, d = b.ravel(), c.ravel(), d.ravel()
    chunks = []
    for a in range(m):
        ok = (a * d - b * c) % m == 1 % m
        chunks.append(np.stack([np.full(ok.sum(), a), b[ok], c[ok], d[ok]], axis=1))
    mats = np.concatenate(chunks).reshape(-1, 2, 2)
    return np.unique(_encode(mats, m))


def gamma0_image(N: int, m: int) -> CongruenceImage:
    """{g in SL_2(Z/m) : c = 0 mod gcd(N, m)}, with closure verified.

    Closure is checked by growing a generating set (T, L_g, diagonal units,
    then any element not yet reached) until the generated group equals the
    congruence set exactly.
    """
    if N < 1:
        raise ValidationError("level N must be positive")
    _guards.check_modulus(m)
    _guards.check(m, _guards.CONGRUENCE_MODULUS, "modulus m")
    target = _congruence_set(N, m)
    g = gcd(N, m)
    gens = [[[1, 1], [0, 1]], [[1, 0], [g, 1]], [[-1, 0], [0, -1]]]
    for u in sorted(unit_group(m)):
        if m > 1:
            gens.append([[u, 0], [0, pow(u, -1, m)]])
    gens = np.array(gens, dtype=np.int64) % m
    while True:
        reached = _closure(gens, m, limit=target.size)
        if not np.isin(reached, target, assume_unique=True).all():
            raise InvariantError(f"generators left the congruence set for N={N}, m={m}")
        if reached.size == target.size:
            break
        extra = target[~np.isin(target, reached, assume_unique=True)][0]
        gens = np.concatenate([gens, _decode(np.array([extra]), m, 2)])
    img = CongruenceImage(N, m, target, gens)
    if not img.has_inverses():
        raise InvariantError("congruence image is missing inverses")
    return img


def sl2_enumerate(m: int) -> np.ndarray:
    """Sorted codes of SL_2(Z/m) by direct enumeration."""
    _guards.check(m, _guards.CONGRUENCE_MODULUS, "modulus m")
    return _congruence_set(1, m)


def gamma0_word_check(N: int, m: int, words: int = 200, length: int = 10, seed: int = 0) -> bool:
    """Reductions of random integer words in T^+-1, L_N^+-1, -I lie in the image."""
    img = gamma0_image(N, m)
    rng = random.Random(seed)
    letters = [
        ((1, 1), (0, 1)), ((1, -1), (0, 1)),
        ((1, 0), (N, 1)), ((1, 0), (-N, 1)),
        ((-1, 0), (0, -1)),
    ]
    for _ in range(words):
        A = ((1, 0), (0, 1))
        for _ in range(rng.randint(0, length)):
            B = rng.choice(letters)
            A = (
                (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
                (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
            )
        if A[1][0] % N or A[0][0] * A[1][1] - A[0][1] * A[1][0] != 1:
            raise InvariantError(f"word {A} is not in Gamma_0({N})")
        if [[v % m for v in row] for row in A] not in img:
            return False
    return True


# ---------------------------------------------------------------------------
# orbits on pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairClass:
    x: int
    y: int


@dataclass(frozen=True)
class PolarizationModel:
    m: int
    phi_multiplier: int
    psi_multiplier: int

    def __init__(self, m: int, phi: int = 1, psi: int | None = None):
        _guards.check_modulus(m)
        phi %= m
        if psi is None:
            psi = pow(phi, -1, m) if gcd(phi, m) == 1 and m > 1 else 0
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "phi_multiplier", phi)
        object.__setattr__(self, "psi_multiplier", psi % m)

    @property
    def is_group_action(self) -> bool:
        return self.phi_multiplier * self.psi_multiplier % self.m == 1 % self.m


def _apply(mats: np.ndarray, xs: np.ndarray, ys: np.ndarray, pol: PolarizationModel):
    m = pol.m
    a, b, c, d = (mats[:, i, j][None, :] for i in range(2) for j in range(2))
    x, y = xs[:, None], ys[:, None]
    nx = (a * x + b * (pol.psi_multiplier * y % m)) % m
    ny = (c * (pol.phi_multiplier * x % m) + d * y) % m
    return nx.ravel(), ny.ravel()


def orbit(start: PairClass | tuple[int, int], group: CongruenceImage, pol: PolarizationModel) -> list[tuple[int, int]]:
    """BFS closure of ``start``; sorted list of (x, y) pairs."""
    m = group.m
    if pol.m != m:
        raise ValidationError(f"polarization is mod {pol.m} but the group is mod {m}")
    if isinstance(start, PairClass):
        start = (start.x, start.y)
    x0, y0 = start[0] % m, start[1] % m
    # generators suffice when the matrix action is a homomorphism
    mats = group.generators if pol.is_group_action else group.arrays
    seen = np.zeros((m, m), dtype=bool)
    seen[x0, y0] = True
    fx, fy = np.array([x0]), np.array([y0])
    while fx.size:
        nx, ny = _apply(mats, fx, fy, pol)
        key = np.unique(nx * m + ny)
        key = key[~seen.ravel()[key]]
        seen.ravel()[key] = True
        fx, fy = key // m, key % m
    xs, ys = np.nonzero(seen)
    return [(int(a), int(b)) for a, b in zip(xs, ys)]


def stabilizer_size(start: tuple[int, int], group: CongruenceImage, pol: PolarizationModel) -> int:
    nx, ny = _apply(group.arrays, np.array([start[0] % pol.m]), np.array([start[1] % pol.m]), pol)
    return int(((nx == start[0] % pol.m) & (ny == start[1] % pol.m)).sum())


@dataclass
class PolarizedReport:
    N: int
    m: int
    phi: int
    psi: int
    passed: bool
    witnesses: dict[int, list[tuple[int, int]]]  # x -> [(y, a)]
    failures: list[tuple[int, int]]  # (x, y) with no coprime a

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "m": self.m,
            "phi": self.phi,
            "psi": self.psi,
            "passed": self.passed,
            "witnesses": {str(x): [list(w) for w in ws] for x, ws in sorted(self.witnesses.items())},
            "failures": [list(f) for f in self.failures],
        }


def polarized_conclusion_check(N: int, m: int, pol: PolarizationModel | None = None) -> PolarizedReport:
    """Every (y, 0) in the orbit of (x, 0) has y = a*x with a prime to ord(x)."""
    if pol is None:
        pol = PolarizationModel(m)
    group = gamma0_image(N, m)
    witnesses: dict[int, list[tuple[int, int]]] = {}
    failures = []
    for x in range(m):
        ox = element_order(x, m)
        ws = []
        for (y, z) in orbit((x, 0), group, pol):
            if z:
                continue
            a = next((a for a in range(1, m + 1) if a * x % m == y and gcd(a, ox) == 1), None)
            if a is None:
                failures.append((x, y))
            else:
                ws.append((y, a))
        witnesses[x] = ws
    return PolarizedReport(N, m, pol.phi_multiplier, pol.psi_multiplier, not failures, witnesses, failures)


# ---------------------------------------------------------------------------
# Sp_2g(Z) mod m
# ---------------------------------------------------------------------------

def symplectic_generators(genus: int) -> np.ndarray:
    """Integral generators: the unipotents [[I, S], [0, I]], [[I, 0], [S, I]] and J."""
    g = genus
    I = np.eye(g, dtype=np.int64)
    Z = np.zeros((g, g), dtype=np.int64)
    sym = []
    for i in range(g):
        for j in range(i, g):
            S = np.zeros((g, g), dtype=np.int64)
            S[i, j] = S[j, i] = 1
            sym.append(S)
    gens = [np.block([[I, S], [Z, I]]) for S in sym]
    gens += [np.block([[I, Z], [S, I]]) for S in sym]
    if g > 1:
        gens.append(np.block([[Z, I], [-I, Z]]))
    return np.array(gens, dtype=np.int64)


@dataclass
class SpImage:
    genus: int
    m: int
    codes: np.ndarray

    @property
    def size(self) -> int:
        return int(self.codes.size)

    @property
    def arrays(self) -> np.ndarray:
        return _decode(self.codes, self.m, 2 * self.genus)

    def all_symplectic(self) -> bool:
        g, m = self.genus, self.m
        J = np.block([[np.zeros((g, g), dtype=np.int64), np.eye(g, dtype=np.int64)],
                      [-np.eye(g, dtype=np.int64), np.zeros((g, g), dtype=np.int64)]])
        A = self.arrays
        lhs = (A.transpose(0, 2, 1) @ J @ A) % m
        return bool((lhs == J % m).all())


def sp_image(genus: int, m: int) -> SpImage:
    """Subgroup of Sp_2g(Z/m) generated by reductions of integral generators."""
    if genus not in (1, 2):
        raise ValidationError("genus must be 1 or 2")
    _guards.check_modulus(m)
    if genus == 1:
        _guards.check(m, _guards.CONGRUENCE_MODULUS, "modulus m")
    else:
        _guards.check(sp_order(2, m), _guards.SP_GROUP_ORDER, "|Sp_4(Z/m)|")
    gens = symplectic_generators(genus) % m
    codes = _closure(gens, m, limit=sp_order(genus, m))
    return SpImage(genus, m, codes)
