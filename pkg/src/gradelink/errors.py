"""Exception types shared across the package."""

from __future__ import annotations

from .groebner import Truncated


class GradelinkError(Exception):
    pass


class NotArtinian(GradelinkError, ValueError):
    """The operation needs a finite-length module."""


class NotFound(GradelinkError, LookupError):
    """A budgeted search ran out; says nothing about mathematical nonexistence."""


class ResolutionTruncated(GradelinkError, RuntimeError):
    """A free resolution could not be extended far enough under the degree cap."""


class GradeMismatch(GradelinkError, ValueError):
    pass


class Undefined(GradelinkError, ValueError):
    """Grade or depth of the zero module."""


class NotExact(GradelinkError, ValueError):
    pass


class NotEpi(GradelinkError, ValueError):
    pass


class NoAlpha(GradelinkError, ValueError):
    """No self-duality isomorphism is available for a linking module."""


class NoCanonical(GradelinkError, ValueError):
    pass


class TheoremViolation(GradelinkError, AssertionError):
    """Two computations that a theorem says must agree did not."""


__all__ = [
    "GradelinkError",
    "NotArtinian",
    "NotFound",
    "ResolutionTruncated",
    "GradeMismatch",
    "Undefined",
    "NotExact",
    "NotEpi",
    "NoAlpha",
    "NoCanonical",
    "TheoremViolation",
    "Truncated",
]
