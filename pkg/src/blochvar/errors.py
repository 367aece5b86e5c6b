"""Shared exception types."""


class DimensionMismatch(ValueError):
    """Operands have incompatible matrix or vector dimensions."""


class UnphysicalState(ValueError):
    """A candidate density matrix fails trace or positivity requirements."""


class UndefinedAngle(ValueError):
    """An angle was requested against a zero-norm vector.

    The completely mixed state has a zero Bloch vector, so angles to it are
    undefined; callers that need the completely mixed limit should use the
    algebraic forms of the relations instead.
    """


class NotApplicable(ValueError):
    """The requested bound is undefined for the supplied input."""


class NumericsError(ArithmeticError):
    """An internal consistency check failed beyond numerical tolerance.

    Raised when two independent routes to the same quantity disagree, a
    radicand is negative beyond round-off, or a cosine leaves [-1, 1] by
    more than round-off.  Signals a logic or data-corruption bug rather
    than bad luck, so it is never silently absorbed.
    """
