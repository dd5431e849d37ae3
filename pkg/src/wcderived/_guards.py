"""Enumeration limits, scaled by the ``WC_GUARD_SCALE`` environment variable."""
from __future__ import annotations

import os

from .errors import GuardError, ValidationError

MAX_MODULUS = 2**31 - 1

# base limits; each is multiplied by guard_scale() at check time
COCYCLE_CANDIDATES = 10**8
MODULE_ORDER = 64
GROUP_ORDER = 8
PICD_DEGREE = 6
CONGRUENCE_MODULUS = 64
SP_GROUP_ORDER = 10**6
POINT_COUNT_PRIME = 10**6
SINGULAR_ENUM_FIELD = 7**3


def guard_scale() -> int:
    raw = os.environ.get("WC_GUARD_SCALE", "1")
    try:
        scale = int(raw)
    except ValueError:
        raise ValidationError(f"WC_GUARD_SCALE must be an integer >= 1, got {raw!r}") from None
    if scale < 1:
        raise ValidationError(f"WC_GUARD_SCALE must be an integer >= 1, got {scale}")
    return scale


def check(value: int, limit: int, what: str) -> None:
    """Raise :class:`GuardError` when ``value`` exceeds ``limit * scale``."""
    bound = limit * guard_scale()
    if value > bound:
        raise GuardError(f"{what} = {value} exceeds guard {bound} (raise WC_GUARD_SCALE to allow)")


def check_modulus(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool):
        raise ValidationError(f"modulus must be an int, got {m!r}")
    if m < 1:
        raise ValidationError(f"modulus must be positive, got {m}")
    if m > MAX_MODULUS:
        raise GuardError(f"modulus {m} exceeds 2**31 - 1")
