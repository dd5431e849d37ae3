"""Exception types shared by every module."""


class ValidationError(ValueError):
    """Input rejected before any computation (maps to CLI exit code 2)."""


class GuardError(ValidationError):
    """An enumeration would exceed its configured size guard."""


class SingularCurveError(ValidationError):
    """The curve or cubic has vanishing discriminant / a singular point."""


class InvariantError(RuntimeError):
    """A computed object failed an internal consistency check (exit code 1)."""
