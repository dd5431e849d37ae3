"""Isomorphism and derived-equivalence classes in a cyclic model of H^1(k, E).

A :class:`WCModel` stands for a cyclic subgroup Z/n of the Weil-Chatelet
group together with the multipliers by which Aut_k(E) acts on it.  Two
torsor classes x, y are

* isomorphic iff x = phi*y for some multiplier phi in A;
* derived equivalent iff x = phi*d*y with phi in A and d prime to ord(y).

Model specs read ``wc n=<n> aut=<comma-separated multipliers>``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import _guards
from .errors import ValidationError
from .modarith import element_order, subgroup_generated_zmod, unit_group


@dataclass(frozen=True)
class WCModel:
    n: int
    aut_multipliers: frozenset[int]

    def __init__(self, n: int, aut_multipliers=None):
        _guards.check_modulus(n)
        _guards.check(n, 10**6, "model order n")
        if aut_multipliers is None:
            aut_multipliers = {1, n - 1}
        A = frozenset(int(u) % n for u in aut_multipliers)
        units = unit_group(n)
        if 1 % n not in A:
            raise ValidationError("automorphism multipliers must contain 1")
        if not A <= units:
            raise ValidationError(f"multipliers {sorted(A - units)} are not units mod {n}")
        if any(u * v % n not in A for u in A for v in A):
            raise ValidationError(f"multipliers {sorted(A)} are not closed under multiplication mod {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "aut_multipliers", A)

    @classmethod
    def parse(cls, spec: str) -> "WCModel":
        parts = spec.split()
        if parts and parts[0] == "wc":
            parts = parts[1:]
        kv = dict(p.split("=", 1) for p in parts if "=" in p)
        if set(kv) - {"n", "aut"} or "n" not in kv or len(kv) != len(parts):
            raise ValidationError(f"expected 'wc n=<n> aut=<u1,u2,...>', got {spec!r}")
        n = int(kv["n"])
        aut = [int(u) for u in kv["aut"].split(",")] if kv.get("aut") else None
        return cls(n, aut)

    def element(self, value: int) -> "TorsorClass":
        return TorsorClass(self, value % self.n)

    def __str__(self):
        return f"wc n={self.n} aut={','.join(str(u) for u in sorted(self.aut_multipliers))}"


@dataclass(frozen=True)
class TorsorClass:
    model: WCModel
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.model.n:
            raise ValidationError(f"{self.value} is not reduced mod {self.model.n}")

    @property
    def order(self) -> int:
        return element_order(self.value, self.model.n)


def _same_model(x: TorsorClass, y: TorsorClass) -> WCModel:
    if x.model != y.model:
        raise ValidationError("torsor classes belong to different models")
    return x.model


def iso_related(x: TorsorClass, y: TorsorClass) -> bool:
    M = _same_model(x, y)
    return any(x.value == phi * y.value % M.n for phi in M.aut_multipliers)


def derived_witness(x: TorsorClass, y: TorsorClass) -> tuple[int, int] | None:
    """Least (phi, d) with x = phi*d*y and gcd(d, ord y) = 1, if any."""
    M = _same_model(x, y)
    oy = y.order
    for phi in sorted(M.aut_multipliers):
        for d in range(1, M.n + 1):
            if gcd(d, oy) == 1 and x.value == phi * d * y.value % M.n:
                return phi, d
    return None


def derived_related(x: TorsorClass, y: TorsorClass) -> bool:
    return derived_witness(x, y) is not None


def moduli_label(y: TorsorClass, d: int) -> TorsorClass:
    """The class of J_y(1, d), which is d*y."""
    return TorsorClass(y.model, d * y.value % y.model.n)


def _partition(n: int, key) -> list[list[int]]:
    groups: dict = {}
    for v in range(n):
        groups.setdefault(key(v), []).append(v)
    return sorted(groups.values())


def iso_classes(model: WCModel) -> list[list[int]]:
    return _partition(model.n, lambda v: min(phi * v % model.n for phi in model.aut_multipliers))


def cyclic_subgroup_classes(model: WCModel) -> list[list[int]]:
    return _partition(model.n, lambda v: subgroup_generated_zmod(v, model.n))


def derived_classes(model: WCModel) -> list[list[int]]:
    """Derived classes as unions of iso classes within one cyclic subgroup.

    x ~ y iff x lies in the A-orbit of some generator of <y>; the key is the
    least such value over the whole orbit of generators.
    """
    n = model.n

    def key(v):
        o = element_order(v, n)
        return min(phi * d * v % n for phi in model.aut_multipliers for d in range(1, n + 1) if gcd(d, o) == 1)

    return _partition(n, key)


@dataclass
class ClassReport:
    model: WCModel
    iso_classes: list[list[int]]
    derived_classes: list[list[int]]
    same_cyclic_partition: bool
    by_order: dict[int, dict[str, int]]

    @property
    def generators(self) -> list[int]:
        return [v for v in range(self.model.n) if element_order(v, self.model.n) == self.model.n]

    def to_dict(self) -> dict:
        gens = set(self.generators)
        return {
            "n": self.model.n,
            "aut": sorted(self.model.aut_multipliers),
            "iso_classes": len(self.iso_classes),
            "derived_classes": len(self.derived_classes),
            "iso_partition": self.iso_classes,
            "derived_partition": self.derived_classes,
            "generator_iso_classes": sum(1 for c in self.iso_classes if c[0] in gens),
            "generator_derived_classes": sum(1 for c in self.derived_classes if c[0] in gens),
            "derived_equals_same_cyclic_subgroup": self.same_cyclic_partition,
            "by_order": {str(k): v for k, v in sorted(self.by_order.items())},
        }


def classify(model: WCModel) -> ClassReport:
    iso = iso_classes(model)
    der = derived_classes(model)
    cyc = cyclic_subgroup_classes(model)
    n = model.n
    by_order: dict[int, dict[str, int]] = {}
    for t in (t for t in range(1, n + 1) if n % t == 0):
        by_order[t] = {
            "elements": sum(1 for v in range(n) if element_order(v, n) == t),
            "iso_classes": sum(1 for c in iso if element_order(c[0], n) == t),
            "derived_classes": sum(1 for c in der if element_order(c[0], n) == t),
        }
    return ClassReport(model, iso, der, der == cyc, by_order)
