"""Exception hierarchy.

Validation problems (:class:`ConfigError`, :class:`DomainError`) map to CLI
exit code 1; numerical failures (:class:`SolverError` and subclasses) map to 2.
"""


class CGSError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CGSError, ValueError):
    """An argument lies outside the domain of a function."""


class ConfigError(CGSError, ValueError):
    """A configuration is malformed, inconsistent, or does not cover the grid."""


class SolverError(CGSError, RuntimeError):
    """Market clearing failed to bracket or converge."""

    def __init__(self, message, *, bracket=None, signs=None, year=None):
        super().__init__(message)
        self.bracket = bracket
        self.signs = signs
        self.year = year


class CalibrationError(SolverError):
    """Calibration could not hit the anchor targets."""

    def __init__(self, message, *, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class ThresholdError(SolverError):
    """The threshold search bracket does not straddle the regime switch."""

    def __init__(self, message, *, indicators=None):
        super().__init__(message)
        self.indicators = indicators


class SweepError(SolverError):
    """A member run of a sensitivity sweep failed."""

    def __init__(self, message, *, value=None):
        super().__init__(message)
        self.value = value
