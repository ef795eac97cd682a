"""Exception and warning types.

Every error carries its class name as a machine-greppable tag; the CLI
prints ``type(exc).__name__`` on stderr.
"""


class RovError(Exception):
    """Base class for all errors raised by the package."""


class DegenerateDenominator(RovError, ZeroDivisionError):
    pass


class NoConvergence(RovError, ArithmeticError):
    pass


class ValidationError(RovError, ValueError):
    """Parameter tuple outside the admissible set."""


class InvalidM(ValidationError):
    pass


class InvalidBeta(ValidationError):
    pass


class InvalidLambda(ValidationError):
    pass


class InvalidZ0(ValidationError):
    pass


class InvalidAlpha(ValidationError):
    pass


class InvalidA(ValidationError):
    pass


class InvalidPath(ValidationError):
    pass


class UnknownPreset(ValidationError):
    pass


class NotSingleton(RovError, ValueError):
    pass


class DegeneratePolygon(RovError, ValueError):
    pass


class NearSingletonWarning(UserWarning):
    """|lambda| is within 1e-6 of 1: the region is numerically tiny."""


class RelaxedClassWarning(UserWarning):
    """A class bound was violated but checking was relaxed by request."""
