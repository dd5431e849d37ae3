"""Split Brauer model Br(J_eta) = Z/n + Br(k) with base subgroup Br(S).

Classes are pairs (x, gamma): x a torsor class mod n, gamma an element of
the Brauer part.  (x, gamma) is fiber-derived related to (y, eps) when a
single integer a has

    gcd(a, ord x) = 1,   a*x = y mod n,   a*gamma - eps in Br(S).

Only a mod lcm(n, exp Br(k)) matters, so the witness search is finite.  The
integer a is not reduced mod n first: for n = 3, Br(k) = Z/2, Br(S) = 0 the
pair (1, 1), (2, 1) is related through a = 5 even though no a in {1, 2}
works.

Model spec: ``brmodel n=<n> br=<o1,o2,...> brs=<g1;g2;...>`` where each
generator of Br(S) is a comma-separated vector (``brs=`` may be empty).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Sequence

import numpy as np

from . import _guards
from .errors import ValidationError
from .modarith import FiniteAbelianGroup, all_subgroups, element_order, subgroup_generated, subgroup_span


@dataclass(frozen=True)
class SplitBrauerModel:
    n: int
    brauer_part: FiniteAbelianGroup
    base_sub: frozenset[tuple[int, ...]]

    def __init__(self, n: int, brauer_part: FiniteAbelianGroup | Sequence[int], base_gens=()):
        _guards.check_modulus(n)
        if not isinstance(brauer_part, FiniteAbelianGroup):
            brauer_part = FiniteAbelianGroup(brauer_part)
        _guards.check(n * brauer_part.order, 10**5, "|Z/n + Br|")
        base = subgroup_span(brauer_part, [brauer_part.reduce(g) for g in base_gens])
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "brauer_part", brauer_part)
        object.__setattr__(self, "base_sub", base)

    @classmethod
    def with_subgroup(cls, n: int, brauer_part: FiniteAbelianGroup, sub) -> "SplitBrauerModel":
        return cls(n, brauer_part, sorted(sub))

    @classmethod
    def parse(cls, spec: str) -> "SplitBrauerModel":
        parts = spec.split()
        if parts and parts[0] == "brmodel":
            parts = parts[1:]
        if not all("=" in p for p in parts):
            raise ValidationError(f"expected 'brmodel n=<n> br=<orders> brs=<gens>', got {spec!r}")
        kv = dict(p.split("=", 1) for p in parts)
        if set(kv) - {"n", "br", "brs"} or "n" not in kv:
            raise ValidationError(f"expected 'brmodel n=<n> br=<orders> brs=<gens>', got {spec!r}")
        try:
            n = int(kv["n"])
            orders = [int(o) for o in kv["br"].split(",") if o] if kv.get("br") else []
            gens = [[int(v) for v in g.split(",")] for g in kv.get("brs", "").split(";") if g]
        except ValueError:
            raise ValidationError(f"malformed integers in {spec!r}") from None
        G = FiniteAbelianGroup(orders)
        if any(len(g) != len(orders) for g in gens):
            raise ValidationError("Br(S) generators must have one entry per cyclic factor")
        return cls(n, G, gens)

    @property
    def witness_modulus(self) -> int:
        return lcm(self.n, self.brauer_part.exponent)

    def element(self, x: int, gamma: Sequence[int] = ()) -> "BrauerClass":
        gamma = tuple(gamma) if gamma else self.brauer_part.zero
        return BrauerClass(self, x % self.n, self.brauer_part.reduce(gamma))

    def elements(self) -> list["BrauerClass"]:
        return [BrauerClass(self, x, g) for x in range(self.n) for g in self.brauer_part.elements()]

    def __str__(self):
        br = ",".join(str(o) for o in self.brauer_part.cyclic_orders)
        brs = ";".join(",".join(map(str, g)) for g in sorted(self.base_sub) if any(g))
        return f"brmodel n={self.n} br={br} brs={brs}"


@dataclass(frozen=True)
class BrauerClass:
    model: SplitBrauerModel
    x: int
    gamma: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.x < self.model.n or tuple(self.model.brauer_part.reduce(self.gamma)) != tuple(self.gamma):
            raise ValidationError(f"({self.x}, {self.gamma}) is not reduced")

    def as_tuple(self) -> tuple[int, ...]:
        return (self.x, *self.gamma)


def _check_same(alpha: BrauerClass, beta: BrauerClass) -> SplitBrauerModel:
    if alpha.model != beta.model:
        raise ValidationError("classes belong to different models")
    return alpha.model


def fiber_derived_related(alpha: BrauerClass, beta: BrauerClass) -> tuple[bool, int | None]:
    """(related, least witness a in 1..lcm(n, exp Br))."""
    M = _check_same(alpha, beta)
    G = M.brauer_part
    ox = element_order(alpha.x, M.n)
    for a in range(1, M.witness_modulus + 1):
        if gcd(a, ox) != 1 or a * alpha.x % M.n != beta.x:
            continue
        if G.sub(G.scale(a, alpha.gamma), beta.gamma) in M.base_sub:
            return True, a
    return False, None


def same_cyclic_in_quotient(alpha: BrauerClass, beta: BrauerClass) -> bool:
    """Do alpha, beta generate the same cyclic subgroup of (Z/n + Br)/Br(S)?"""
    _check_same(alpha, beta)
    return quotient_subgroup(alpha) == quotient_subgroup(beta)


def quotient_subgroup(c: BrauerClass) -> frozenset[tuple[int, ...]]:
    """Preimage in Z/n + Br of the cyclic subgroup generated by c mod Br(S)."""
    M = c.model
    total = FiniteAbelianGroup([M.n, *M.brauer_part.cyclic_orders])
    gen = subgroup_generated(total, c.as_tuple())
    return frozenset(total.add(g, (0, *b)) for g in gen for b in M.base_sub)


def relation_matrix(model: SplitBrauerModel) -> np.ndarray:
    """R[i, j] = fiber_derived_related(e_i, e_j) over model.elements()."""
    elts = model.elements()
    G = model.brauer_part
    base_idx = np.zeros(G.order, dtype=bool)
    base_idx[[G.index(b) for b in model.base_sub]] = True
    xs = np.array([e.x for e in elts])
    gs = np.array([G.index(e.gamma) for e in elts])
    members = list(G.elements())
    sub_tab = np.array([[G.index(G.sub(u, v)) for v in members] for u in members], dtype=np.int64)
    R = np.zeros((len(elts), len(elts)), dtype=bool)
    ox = np.array([element_order(int(x), model.n) for x in xs])
    for a in range(1, model.witness_modulus + 1):
        rows = np.gcd(a, ox) == 1
        if not rows.any():
            continue
        ax = a * xs % model.n
        ag = np.array([G.index(G.scale(a, e.gamma)) for e in elts])
        diff = sub_tab[ag][:, gs]
        R |= rows[:, None] & (ax[:, None] == xs[None, :]) & base_idx[diff]
    return R


def brauer_shapes(max_order: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists n_1 | n_2 | ... with product <= max_order (one per iso type)."""
    out = [()]

    def grow(prefix: tuple[int, ...], size: int):
        last = prefix[-1] if prefix else 1
        for k in range(2, max_order // size + 1):
            if k % last == 0:
                out.append(prefix + (k,))
                grow(prefix + (k,), size * k)

    grow((), 1)
    return sorted(out, key=lambda s: (prod(s), s))


def all_models(max_n: int, max_br: int) -> list[SplitBrauerModel]:
    """Every model with n <= max_n, |Br| <= max_br, over every base subgroup."""
    models = []
    for shape in brauer_shapes(max_br):
        G = FiniteAbelianGroup(shape)
        subs = all_subgroups(G)
        for n in range(1, max_n + 1):
            models.extend(SplitBrauerModel.with_subgroup(n, G, s) for s in subs)
    return models


def random_models(rng, count: int, max_n: int, max_br: int) -> list[SplitBrauerModel]:
    shapes = brauer_shapes(max_br)
    out = []
    for _ in range(count):
        G = FiniteAbelianGroup(rng.choice(shapes))
        out.append(SplitBrauerModel.with_subgroup(rng.randint(1, max_n), G, rng.choice(all_subgroups(G))))
    return out


@dataclass
class ModelCheck:
    model: SplitBrauerModel
    pairs: int
    two_sided: int
    implication_failures: list[tuple[tuple[int, ...], tuple[int, ...]]]
    reflexive: bool
    transitive: bool

    @property
    def passed(self) -> bool:
        return not self.implication_failures and self.reflexive and self.transitive


def check_model(model: SplitBrauerModel) -> ModelCheck:
    """Two-sided relatedness implies same cyclic subgroup; equivalence axioms."""
    R = relation_matrix(model)
    S = R & R.T
    elts = model.elements()
    labels = [quotient_subgroup(e) for e in elts]
    fails = [
        (elts[i].as_tuple(), elts[j].as_tuple())
        for i, j in zip(*np.nonzero(S))
        if labels[i] != labels[j]
    ]
    Si = S.astype(np.int64)
    transitive = bool(((Si @ Si > 0) <= S).all())
    return ModelCheck(model, len(elts) ** 2, int(S.sum()), fails, bool(np.diag(R).all()), transitive)
