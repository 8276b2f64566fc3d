"""Exception taxonomy shared across the package."""


class MpccError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(MpccError, ValueError):
    """An input's shape disagrees with the declared problem dimensions."""


class InfeasiblePoint(MpccError):
    """The base point violates the constraints beyond ``feas_tol``."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NumericalFailure(MpccError):
    """A solver hit its iteration cap or lost numerical control."""


class PostconditionViolated(NumericalFailure):
    """A combination step failed its guaranteed sign condition.

    The guarantee is exact in real arithmetic, so a violation signals a
    solver-tolerance problem rather than a modelling error; hence this is
    a :class:`NumericalFailure`.
    """


class BranchBudgetExceeded(MpccError):
    """The biactive set is larger than the configured branch cap."""


class PatternBudgetExceeded(MpccError):
    """The biactive set is too large for sign-pattern enumeration."""


class SystemViolated(MpccError):
    """Multipliers fail the base stationarity system; no class applies."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotAffine(MpccError, TypeError):
    """The operation requires affine constraint data."""


class ParseError(MpccError, ValueError):
    """A problem or multiplier document could not be parsed."""
