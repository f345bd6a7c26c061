"""Exception hierarchy shared by every module."""


class NoisentError(Exception):
    """Base class for all library errors."""


class NotHermitian(NoisentError):
    pass


class DimensionMismatch(NoisentError):
    pass


class DuplicateTarget(NoisentError):
    pass


class InvalidState(NoisentError):
    """Matrix fails density-matrix validation (trace, Hermiticity or positivity)."""


class NotUnitary(NoisentError):
    pass


class NotTracePreserving(NoisentError):
    pass


class OutOfRange(NoisentError, ValueError):
    pass


class NoNegativeEigenvalues(NoisentError):
    pass


class NonrealExpectation(NoisentError):
    pass


class UnsupportedDim(NoisentError):
    pass


class InfeasibleCalibration(NoisentError):
    pass


class ZeroSurvival(NoisentError):
    pass


class MissingSetting(NoisentError):
    pass


class NumericalMismatch(NoisentError):
    """An internal closed-form cross-check disagreed with direct evaluation."""
