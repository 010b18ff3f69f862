"""Exception types raised across the package."""


class QesError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(QesError, ValueError):
    """An input violates a documented precondition."""


class NumericFailure(QesError, ArithmeticError):
    """An iterative numerical procedure did not converge.

    Parameters
    ----------
    message : str
        Human readable description.
    interval : tuple of float, optional
        Bracketing interval still containing the sought root, if known.
    """

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class NoRealFieldError(QesError, ValueError):
    """The locked frequency lies below the confinement frequency.

    No real cyclotron frequency reaches the requested quasi-exact point;
    the confinement frequency has to shrink.
    """

    def __init__(self, w, w0):
        super().__init__(
            f"w = {w!r} < w0 = {w0!r}: no real magnetic field reaches this state; "
            "reduce the confinement frequency"
        )
        self.w = w
        self.w0 = w0


class ResolutionError(NumericFailure):
    """Finite-difference grid too coarse to resolve the requested states."""

    def __init__(self, message, suggested_h):
        super().__init__(f"{message} (try h <= {suggested_h:.6g})")
        self.suggested_h = suggested_h


class BasisConditioningError(NumericFailure):
    """Overlap matrix of the variational basis could not be factorized."""
