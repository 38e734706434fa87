"""Exception hierarchy for lgbundle."""

from __future__ import annotations


class LGBundleError(Exception):
    """Base class for every error raised by the package."""


# -- bundle data -------------------------------------------------------------

class InvalidBundle(LGBundleError, ValueError):
    pass


class FanoViolation(InvalidBundle):
    pass


class NegativeTwist(InvalidBundle):
    pass


class Unsorted(InvalidBundle):
    pass


class SizeMismatch(LGBundleError, ValueError):
    pass


# -- numerics ---------------------------------------------------------------

class NumericalError(LGBundleError, ArithmeticError):
    """Failures of the numerical pipeline (solver, tracker, labeling)."""


class ZeroCoordinate(NumericalError):
    pass


class DegenerateLift(NumericalError):
    pass


class NonGenericParameter(NumericalError):
    """Fewer than N distinct critical points survived polishing.

    Usually means the coefficient vector sits close to the locus where the
    critical scheme is non-reduced.
    """


class NewtonDivergence(NumericalError):
    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class PathCollision(NumericalError):
    def __init__(self, message: str, tau: float | None = None, indices=None):
        super().__init__(message)
        self.tau = tau
        self.indices = indices


class AmbiguousMatch(NumericalError):
    pass


class LabelAmbiguity(NumericalError):
    pass


class GridDegenerate(NumericalError):
    pass
