"""Brute-force H^1 of a finite group acting on a finite abelian group.

Conventions
-----------
Cocycles are normalized (rho(e) = 0) total maps G -> M satisfying the
crossed-homomorphism law::

    rho(gh) = g.rho(h) + rho(g)

which is the law obeyed by rho(g) = g.p - p for a point p on a torsor.
Coboundaries are the maps g -> g.m - m.

Degree-d line bundles on a torsor
---------------------------------
:func:`picd_cocycle` models Pic^d of the torsor twisted by alpha.  The
twisted Galois action on points is g*y = g.y + alpha(g).  A degree-d
effective divisor is a size-d multiset of points, and on a genus-1 curve two
divisors of the same degree are linearly equivalent iff their sums agree
(Abel-Jacobi), so a divisor class is represented by the sum of its points.
Acting pointwise on divisors and reading off the induced action on classes
gives a new twisted action c -> g.c + beta(g); beta is the cocycle of
Pic^d, computed relative to the base class 0.  For d = 0 the divisors are
differences (y1) - (y2).  The computation never assumes beta = d*alpha; it
derives beta from the divisor action and then checks the identity.

GModule text format
-------------------
One directive per line, ``#`` starts a comment::

    group C4              # C<n>, C<n>xC<m>..., V4, S3, trivial, or "table"
    row 0 1 2 3           # only after "group table": one row per element
    module 5              # cyclic orders of M
    action 1              # one line per group element, in element order;
    action 2              # a matrix over the cyclic factors, rows split by ";"
    action 4
    action 3

``action trivial`` gives the trivial action.  Matrices act on column
vectors: component i of the image is sum_j A[i][j] m_j mod n_i.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import _guards, _kernels
from .errors import InvariantError, ValidationError
from .modarith import FiniteAbelianGroup, unit_group


class FiniteGroup:
    """A finite group given by its multiplication table.

    Element indices are 0..size-1; ``table[g][h]`` is the index of g*h.
    The axioms are checked on construction.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str | None = None):
        tab = np.asarray(table, dtype=np.int64)
        n = tab.shape[0]
        if tab.ndim != 2 or tab.shape != (n, n) or n == 0:
            raise ValidationError("group table must be a non-empty square array")
        _guards.check(n, _guards.GROUP_ORDER, "group order")
        if tab.min() < 0 or tab.max() >= n:
            raise ValidationError("group table entries out of range")
        ident = [e for e in range(n) if (tab[e] == np.arange(n)).all() and (tab[:, e] == np.arange(n)).all()]
        if not ident:
            raise ValidationError("group table has no identity")
        e = ident[0]
        if not self._associative(tab):
            raise ValidationError("group table is not associative")
        for g in range(n):
            if not (tab[g] == e).any():
                raise ValidationError(f"element {g} has no inverse")
        self.table = tab
        self.size = n
        self.identity = e
        self.name = name or f"table{n}"

    @staticmethod
    def _associative(tab: np.ndarray) -> bool:
        n = tab.shape[0]
        g, h, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        return bool((tab[tab[g, h], k] == tab[g, tab[h, k]]).all())

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inverse(self, g: int) -> int:
        return int(np.flatnonzero(self.table[g] == self.identity)[0])

    def elements(self) -> range:
        return range(self.size)

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.size})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    # constructors -----------------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        r = np.arange(n)
        return cls((r[:, None] + r[None, :]) % n, name=f"C{n}")

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], name="trivial")

    @classmethod
    def product(cls, *factors: "FiniteGroup") -> "FiniteGroup":
        sizes = [f.size for f in factors]
        elems = list(itertools.product(*(range(s) for s in sizes)))
        index = {e: i for i, e in enumerate(elems)}
        tab = [[index[tuple(f.mul(a, b) for f, a, b in zip(factors, x, y))] for y in elems] for x in elems]
        return cls(tab, name="x".join(f.name for f in factors))

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        perms = sorted(itertools.permutations(range(3)))
        index = {p: i for i, p in enumerate(perms)}
        # (g*h)(i) = g(h(i))
        tab = [[index[tuple(g[h[i]] for i in range(3))] for h in perms] for g in perms]
        return cls(tab, name="S3")

    @classmethod
    def parse(cls, spec: str) -> "FiniteGroup":
        spec = spec.strip()
        if spec in ("trivial", "C1", "1"):
            return cls.trivial()
        if spec == "S3":
            return cls.symmetric3()
        if spec == "V4":
            return cls.product(cls.cyclic(2), cls.cyclic(2))
        parts = spec.split("x")
        try:
            orders = [int(p[1:]) for p in parts if p.startswith("C")]
        except ValueError:
            orders = []
        if len(orders) != len(parts) or not orders or min(orders) < 1:
            raise ValidationError(f"unknown group {spec!r}")
        groups = [cls.cyclic(n) for n in orders]
        return groups[0] if len(groups) == 1 else cls.product(*groups)


def small_groups(max_order: int = 6) -> list[FiniteGroup]:
    """One group from each isomorphism class of order <= max_order (max 7)."""
    if max_order > 7:
        raise ValidationError("small_groups only knows orders up to 7")
    cands = [
        FiniteGroup.trivial(),
        FiniteGroup.cyclic(2),
        FiniteGroup.cyclic(3),
        FiniteGroup.cyclic(4),
        FiniteGroup.product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)),
        FiniteGroup.cyclic(5),
        FiniteGroup.cyclic(6),
        FiniteGroup.symmetric3(),
        FiniteGroup.cyclic(7),
    ]
    return [g for g in cands if g.size <= max_order]


class GModule:
    """A finite abelian group M with a left action of a finite group G.

    ``matrices[g]`` is the integer matrix of g acting on M's cyclic factors.
    Tables over element indices (the lexicographic order of
    :meth:`FiniteAbelianGroup.elements`) are built once and validated.
    """

    def __init__(self, group: FiniteGroup, module: FiniteAbelianGroup, matrices: Sequence[Sequence[Sequence[int]]]):
        _guards.check(module.order, _guards.MODULE_ORDER, "module order")
        k = len(module.cyclic_orders)
        if len(matrices) != group.size:
            raise ValidationError(f"need {group.size} action matrices, got {len(matrices)}")
        mats = []
        for A in matrices:
            A = [list(r) for r in A]
            if len(A) != k or any(len(r) != k for r in A):
                raise ValidationError(f"action matrices must be {k}x{k}")
            mats.append(tuple(tuple(int(v) for v in r) for r in A))
        self.group = group
        self.module = module
        self.matrices = tuple(mats)
        elems = list(module.elements())
        self._elements = elems
        n_m = len(elems)
        self.add_table = np.array([[module.index(module.add(a, b)) for b in elems] for a in elems], dtype=np.int64).reshape(n_m, n_m)
        self.neg_table = np.array([module.index(module.neg(a)) for a in elems], dtype=np.int64)
        act = np.empty((group.size, n_m), dtype=np.int64)
        for g, A in enumerate(mats):
            for i, m in enumerate(elems):
                img = [sum(A[r][c] * m[c] for c in range(k)) for r in range(k)]
                act[g, i] = module.index(module.reduce(img))
        self.act_table = act
        self._validate()

    def _validate(self):
        G, act, add = self.group, self.act_table, self.add_table
        n_m = act.shape[1]
        if not (act[G.identity] == np.arange(n_m)).all():
            raise ValidationError("identity must act trivially")
        for g in G.elements():
            if len(set(act[g].tolist())) != n_m:
                raise ValidationError(f"element {g} does not act bijectively")
            if not (act[g][add] == add[act[g][:, None], act[g][None, :]]).all():
                raise ValidationError(f"element {g} does not act additively")
            for h in G.elements():
                if not (act[G.mul(g, h)] == act[g][act[h]]).all():
                    raise ValidationError(f"action(g h) != action(g) action(h) for g={g}, h={h}")

    # convenience constructors ----------------------------------------------

    @classmethod
    def trivial_action(cls, group: FiniteGroup, module: FiniteAbelianGroup) -> "GModule":
        k = len(module.cyclic_orders)
        ident = [[int(i == j) for j in range(k)] for i in range(k)]
        return cls(group, module, [ident] * group.size)

    @classmethod
    def cyclic(cls, group: FiniteGroup, n: int, multipliers: Sequence[int]) -> "GModule":
        """G acting on Z/n, element g by multiplication with ``multipliers[g]``."""
        return cls(group, FiniteAbelianGroup([n]), [[[int(u)]] for u in multipliers])

    # element helpers -------------------------------------------------------

    @property
    def size(self) -> int:
        return self.act_table.shape[1]

    def element(self, i: int) -> tuple[int, ...]:
        return self._elements[i]

    def index(self, m: Sequence[int]) -> int:
        return self.module.index(self.module.reduce(m))

    def act(self, g: int, m: Sequence[int]) -> tuple[int, ...]:
        return self._elements[self.act_table[g, self.index(m)]]

    def __repr__(self):
        return f"GModule({self.group.name} on {self.module})"

    def describe(self) -> dict:
        return {
            "group": self.group.name,
            "group_order": self.group.size,
            "module": list(self.module.cyclic_orders),
            "action": [[list(r) for r in A] for A in self.matrices],
        }


def cyclic_actions(group: FiniteGroup, n: int) -> list[tuple[int, ...]]:
    """Every homomorphism G -> (Z/n)^x, as per-element multiplier tuples."""
    units = sorted(unit_group(n))
    one = 1 % n
    out = []
    free = [g for g in group.elements() if g != group.identity]
    for choice in itertools.product(units, repeat=len(free)):
        mult = [one] * group.size
        for g, u in zip(free, choice):
            mult[g] = u
        if all(mult[group.mul(g, h)] == mult[g] * mult[h] % n for g in free for h in free):
            out.append(tuple(mult))
    return out


@dataclass(frozen=True, eq=False)
class Cocycle:
    """Normalized crossed homomorphism, stored as module-element indices."""

    gmodule: GModule
    indices: tuple[int, ...]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        M = self.gmodule
        if len(self.indices) != M.group.size:
            raise ValidationError("a cocycle needs one value per group element")
        if self.check:
            if self.indices[M.group.identity] != 0:
                raise ValidationError("cocycle is not normalized (value at identity is nonzero)")
            if not is_cocycle(M, self.indices):
                raise ValidationError("values violate rho(gh) = g.rho(h) + rho(g)")

    @classmethod
    def from_values(cls, gmodule: GModule, values: Sequence[Sequence[int]]) -> "Cocycle":
        return cls(gmodule, tuple(gmodule.index(v) for v in values))

    @property
    def values(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.gmodule.element(i) for i in self.indices)

    def __call__(self, g: int) -> tuple[int, ...]:
        return self.gmodule.element(self.indices[g])

    def __add__(self, other: "Cocycle") -> "Cocycle":
        add = self.gmodule.add_table
        return Cocycle(self.gmodule, tuple(int(add[a, b]) for a, b in zip(self.indices, other.indices)), check=False)

    def __neg__(self) -> "Cocycle":
        neg = self.gmodule.neg_table
        return Cocycle(self.gmodule, tuple(int(neg[a]) for a in self.indices), check=False)

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        return self + (-other)

    def scaled(self, d: int) -> "Cocycle":
        mod = self.gmodule.module
        return Cocycle.from_values(self.gmodule, [mod.scale(d, v) for v in self.values])

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.gmodule is other.gmodule and self.indices == other.indices

    def __hash__(self):
        return hash(self.indices)

    def sort_key(self):
        return self.values

    def __lt__(self, other: "Cocycle"):
        return self.sort_key() < other.sort_key()


def is_cocycle(M: GModule, indices: Sequence[int]) -> bool:
    G, act, add = M.group, M.act_table, M.add_table
    if indices[G.identity] != 0:
        return False
    return all(
        indices[G.mul(g, h)] == add[act[g, indices[h]], indices[g]]
        for g in G.elements() for h in G.elements()
    )


def _candidate_count(M: GModule) -> int:
    return M.size ** (M.group.size - 1)


def cocycles(M: GModule) -> list[Cocycle]:
    """Z^1(G, M): every normalized map filtered through the cocycle law."""
    _guards.check(_candidate_count(M), _guards.COCYCLE_CANDIDATES, "normalized candidate maps")
    rows = _kernels.active.filter_cocycles(M.act_table, M.add_table, M.group.table, M.group.identity)
    out = [Cocycle(M, tuple(int(v) for v in r), check=False) for r in rows]
    return sorted(out)


def coboundaries(M: GModule) -> list[Cocycle]:
    """B^1(G, M) = {g -> g.m - m}, deduplicated and sorted."""
    act, add, neg = M.act_table, M.add_table, M.neg_table
    seen = set()
    for m in range(M.size):
        seen.add(tuple(int(add[act[g, m], neg[m]]) for g in M.group.elements()))
    return sorted(Cocycle(M, idx, check=False) for idx in seen)


def coboundary_of(M: GModule, m: Sequence[int]) -> Cocycle:
    i = M.index(m)
    return Cocycle(M, tuple(int(M.add_table[M.act_table[g, i], M.neg_table[i]]) for g in M.group.elements()), check=False)


@dataclass
class H1:
    gmodule: GModule
    z1: list[Cocycle]
    b1: list[Cocycle]
    representatives: list[Cocycle]

    @property
    def size(self) -> int:
        return len(self.representatives)

    @cached_property
    def _class_index(self) -> dict[Cocycle, int]:
        idx = {}
        for k, rep in enumerate(self.representatives):
            for b in self.b1:
                idx[rep + b] = k
        return idx

    def class_of(self, z: Cocycle) -> Cocycle:
        """Lexicographically least cocycle cohomologous to ``z``."""
        return self.representatives[self._class_index[z]]

    def is_coboundary(self, z: Cocycle) -> bool:
        return z in set(self.b1)

    def exponent_bound_holds(self) -> bool:
        """|G| kills every class."""
        b1 = set(self.b1)
        return all(rep.scaled(self.gmodule.group.size) in b1 for rep in self.representatives)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "z1_size": len(self.z1),
            "b1_size": len(self.b1),
            "representatives": [[list(v) for v in r.values] for r in self.representatives],
        }


def h1(M: GModule) -> H1:
    """H^1 = Z^1 / B^1 with lexicographically minimal coset representatives."""
    z1 = cocycles(M)
    b1 = coboundaries(M)
    zset = set(z1)
    if not set(b1) <= zset:
        raise InvariantError("a coboundary failed the cocycle law")
    assigned: set[Cocycle] = set()
    reps = []
    for z in z1:  # ascending, so the first unassigned member is its coset minimum
        if z in assigned:
            continue
        coset = {z + b for b in b1}
        if not coset <= zset:
            raise InvariantError("coset left Z^1")
        assigned |= coset
        reps.append(z)
    if len(reps) * len(b1) != len(z1):
        raise InvariantError("|H^1| |B^1| != |Z^1|")
    return H1(M, z1, b1, reps)


class TwistedAction:
    """The G-set structure on M given by g*y = g.y + alpha(g)."""

    def __init__(self, alpha: Cocycle):
        M = alpha.gmodule
        self.alpha = alpha
        self.gmodule = M
        idx = np.asarray(alpha.indices, dtype=np.int64)
        self.table = M.add_table[M.act_table, idx[:, None]]
        G = M.group
        for g in G.elements():
            for h in G.elements():
                if not (self.table[G.mul(g, h)] == self.table[g][self.table[h]]).all():
                    raise InvariantError("twisted action fails (gh)*y = g*(h*y)")

    def __call__(self, g: int, y: Sequence[int]) -> tuple[int, ...]:
        M = self.gmodule
        return M.element(self.table[g, M.index(y)])

    def is_isomorphic_to(self, other: "TwistedAction") -> Sequence[int] | None:
        """A translation y -> y + m intertwining self with other, if one exists."""
        M = self.gmodule
        add = M.add_table
        for m in range(M.size):
            shift = add[:, m]
            if all((self.table[g][shift] == shift[other.table[g]]).all() for g in M.group.elements()):
                return M.element(m)
        return None

    def fixed_points(self) -> list[tuple[int, ...]]:
        fixed = np.all(self.table == np.arange(self.gmodule.size)[None, :], axis=0)
        return [self.gmodule.element(i) for i in np.flatnonzero(fixed)]


def torsor_from_cocycle(alpha: Cocycle) -> TwistedAction:
    return TwistedAction(alpha)


@lru_cache(maxsize=128)
def _multisets(n_m: int, d: int) -> np.ndarray:
    combos = list(itertools.combinations_with_replacement(range(n_m), d))
    arr = np.array(combos, dtype=np.int64).reshape(len(combos), d)
    arr.setflags(write=False)
    return arr


def picd_cocycle(alpha: Cocycle, d: int) -> Cocycle:
    """Cocycle of the degree-d divisor classes on the torsor twisted by alpha."""
    if d < 0:
        raise ValidationError("degree must be nonnegative")
    _guards.check(d, _guards.PICD_DEGREE, "divisor degree")
    M = alpha.gmodule
    n_m = M.size
    tw = torsor_from_cocycle(alpha).table
    add, act = M.add_table, M.act_table
    zero = 0
    if d == 0:
        ys = np.arange(n_m)
        pos, negs = np.repeat(ys, n_m), np.tile(ys, n_m)
        sums = add[pos, M.neg_table[negs]]
        images = np.stack([add[tw[g][pos], M.neg_table[tw[g][negs]]] for g in M.group.elements()])
    else:
        _guards.check(math.comb(n_m + d - 1, d), 10**6, "number of degree-d divisors")
        sums, images = _kernels.active.multiset_images(tw, add, _multisets(n_m, d), zero)
    classes = np.unique(sums)
    beta = []
    for g in M.group.elements():
        cls_img = np.full(n_m, -1, dtype=np.int64)
        cls_img[sums] = images[g]
        if not (cls_img[sums] == images[g]).all():
            raise InvariantError(f"element {g} does not act on divisor classes")
        b = int(cls_img[zero])
        if not (cls_img[classes] == add[act[g, classes], b]).all():
            raise InvariantError(f"element {g} does not act on classes by a twisted translation")
        beta.append(b)
    out = Cocycle(M, tuple(beta))  # re-checks the cocycle law
    if out != alpha.scaled(d):
        raise InvariantError(f"Pic^{d} cocycle differs from {d} * alpha")
    return out


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def _parse_matrix(text: str, k: int) -> list[list[int]]:
    rows = [r.replace(",", " ").split() for r in text.split(";")]
    try:
        mat = [[int(v) for v in r] for r in rows]
    except ValueError:
        raise ValidationError(f"bad action matrix {text!r}") from None
    if len(mat) != k or any(len(r) != k for r in mat):
        raise ValidationError(f"action matrix {text!r} is not {k}x{k}")
    return mat


def parse_gmodule(text: str) -> GModule:
    group = None
    table_rows: list[list[int]] = []
    orders = None
    actions: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "group":
            group = rest
        elif key == "row":
            table_rows.append([int(v) for v in rest.split()])
        elif key == "module":
            orders = [int(v) for v in rest.replace(",", " ").split()]
        elif key == "action":
            actions.append(rest)
        else:
            raise ValidationError(f"unknown directive {key!r}")
    if group is None or orders is None:
        raise ValidationError("gmodule text needs 'group' and 'module' lines")
    G = FiniteGroup(table_rows) if group == "table" else FiniteGroup.parse(group)
    return build_gmodule(G, orders, actions)


def build_gmodule(G: FiniteGroup, orders: Sequence[int], actions: Sequence[str]) -> GModule:
    module = FiniteAbelianGroup(orders)
    if not actions or list(actions) == ["trivial"]:
        return GModule.trivial_action(G, module)
    k = len(module.cyclic_orders)
    return GModule(G, module, [_parse_matrix(a, k) for a in actions])
