"""Residues mod m and explicit finite abelian groups.

Everything downstream (torsor classes, Brauer models, module coefficients)
is built from these two value types.  Groups are stored as a product of
cyclic factors exactly as given; two groups are equal iff their factor
lists are equal, no normal form is computed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

from . import _guards
from .errors import ValidationError


@dataclass(frozen=True, order=True)
class ZModElement:
    value: int
    modulus: int

    def __post_init__(self):
        _guards.check_modulus(self.modulus)
        if not 0 <= self.value < self.modulus:
            raise ValidationError(f"{self.value} is not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "ZModElement":
        _guards.check_modulus(modulus)
        return cls(value % modulus, modulus)

    def _same(self, other: "ZModElement") -> None:
        if self.modulus != other.modulus:
            raise ValidationError(f"cannot combine residues mod {self.modulus} and mod {other.modulus}")

    def __add__(self, other: "ZModElement") -> "ZModElement":
        self._same(other)
        return ZModElement((self.value + other.value) % self.modulus, self.modulus)

    def __sub__(self, other: "ZModElement") -> "ZModElement":
        self._same(other)
        return ZModElement((self.value - other.value) % self.modulus, self.modulus)

    def __neg__(self) -> "ZModElement":
        return ZModElement(-self.value % self.modulus, self.modulus)

    def __mul__(self, other) -> "ZModElement":
        if isinstance(other, ZModElement):
            self._same(other)
            other = other.value
        elif not isinstance(other, int):
            return NotImplemented
        return ZModElement(self.value * other % self.modulus, self.modulus)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def inverse(self) -> "ZModElement":
        if not self.is_unit():
            raise ValidationError(f"{self.value} is not invertible mod {self.modulus}")
        return ZModElement(pow(self.value, -1, self.modulus) if self.modulus > 1 else 0, self.modulus)

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


def unit_group(m: int) -> frozenset[int]:
    """Residues in [1, m) coprime to m; the trivial unit {0} when m == 1."""
    _guards.check_modulus(m)
    if m == 1:
        return frozenset({0})
    return frozenset(u for u in range(1, m) if gcd(u, m) == 1)


def element_order(x: ZModElement | int, m: int | None = None) -> int:
    """Additive order of a residue, ``m / gcd(x, m)``.

    Accepts either a :class:`ZModElement` or a plain ``(value, modulus)`` pair.
    """
    if isinstance(x, ZModElement):
        value, m = x.value, x.modulus
    else:
        if m is None:
            raise ValidationError("element_order needs a modulus for a plain integer")
        _guards.check_modulus(m)
        value = x % m
    return m // gcd(value, m)


def subgroup_generated_zmod(x: int, m: int) -> frozenset[int]:
    return frozenset(k * x % m for k in range(element_order(x, m)))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/n_1 x ... x Z/n_k`` with elements as reduced tuples.

    An empty ``cyclic_orders`` is the trivial group, whose only element is ().
    """

    cyclic_orders: tuple[int, ...]

    def __init__(self, cyclic_orders: Iterable[int]):
        orders = tuple(int(n) for n in cyclic_orders)
        for n in orders:
            _guards.check_modulus(n)
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.cyclic_orders) if self.cyclic_orders else 1

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.cyclic_orders)

    def reduce(self, elt: Sequence[int]) -> tuple[int, ...]:
        if len(elt) != len(self.cyclic_orders):
            raise ValidationError(f"element {tuple(elt)} has wrong length for {self}")
        return tuple(int(v) % n for v, n in zip(elt, self.cyclic_orders))

    def contains(self, elt: Sequence[int]) -> bool:
        return len(elt) == len(self.cyclic_orders) and all(
            0 <= v < n for v, n in zip(elt, self.cyclic_orders)
        )

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.cyclic_orders))

    def sub(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a - b) % n for a, b, n in zip(x, y, self.cyclic_orders))

    def neg(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(-a % n for a, n in zip(x, self.cyclic_orders))

    def scale(self, k: int, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(k * a % n for a, n in zip(x, self.cyclic_orders))

    def element_order(self, x: Sequence[int]) -> int:
        return lcm(1, *(n // gcd(a, n) for a, n in zip(x, self.cyclic_orders)))

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All elements in lexicographic order (also the index order)."""
        return itertools.product(*(range(n) for n in self.cyclic_orders))

    def index(self, x: Sequence[int]) -> int:
        i = 0
        for a, n in zip(x, self.cyclic_orders):
            i = i * n + a
        return i

    def element_at(self, i: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.cyclic_orders):
            i, a = divmod(i, n)
            out.append(a)
        return tuple(reversed(out))

    def __str__(self):
        if not self.cyclic_orders:
            return "trivial"
        return " x ".join(f"Z/{n}" for n in self.cyclic_orders)


def subgroup_generated(group: FiniteAbelianGroup, x: Sequence[int]) -> frozenset[tuple[int, ...]]:
    """The cyclic subgroup {0, x, 2x, ...}, built by repeated addition."""
    x = tuple(x)
    if not group.contains(x):
        raise ValidationError(f"{x} is not a reduced element of {group}")
    out = {group.zero}
    cur = x
    while cur not in out:
        out.add(cur)
        cur = group.add(cur, x)
    return frozenset(out)


def subgroup_span(group: FiniteAbelianGroup, gens: Iterable[Sequence[int]]) -> frozenset[tuple[int, ...]]:
    """Smallest subgroup containing every element of ``gens``."""
    span = {group.zero}
    for g in gens:
        g = group.reduce(g)
        if g in span:
            continue
        cyc = subgroup_generated(group, g)
        span = {group.add(a, b) for a in span for b in cyc}
    return frozenset(span)


def is_subgroup(group: FiniteAbelianGroup, subset: Iterable[Sequence[int]]) -> bool:
    s = {tuple(e) for e in subset}
    if group.zero not in s or not all(group.contains(e) for e in s):
        return False
    return all(group.sub(a, b) in s for a in s for b in s)


def all_subgroups(group: FiniteAbelianGroup) -> list[frozenset[tuple[int, ...]]]:
    """Every subgroup, found by growing spans one generator at a time."""
    _guards.check(group.order, 256, "group order for subgroup enumeration")
    found = {frozenset({group.zero})}
    frontier = list(found)
    elements = list(group.elements())
    while frontier:
        nxt = []
        for h in frontier:
            for e in elements:
                if e in h:
                    continue
                bigger = subgroup_span(group, list(h) + [e])
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))
