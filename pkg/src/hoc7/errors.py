"""Exception hierarchy shared across the package."""


class Hoc7Error(Exception):
    """Base class for all errors raised by hoc7."""


class DomainError(Hoc7Error, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class NumericalFailure(Hoc7Error, RuntimeError):
    """A computation produced non-finite or otherwise unusable values."""


class TransformError(NumericalFailure):
    """The inverse Hopf-Cole transform met a non-positive psi value.

    Attributes
    ----------
    index : int
        Grid index of the first offending value.
    value : float
        The offending psi value.
    """

    def __init__(self, message, index, value):
        super().__init__(message)
        self.index = index
        self.value = value


class QuadratureError(NumericalFailure):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, achieved):
        super().__init__(message)
        self.achieved = achieved


class SeriesUnreliable(NumericalFailure):
    """A Fourier-series evaluation cannot be trusted at the requested point."""

    def __init__(self, message, reason, terms_used):
        super().__init__(message)
        self.reason = reason
        self.terms_used = terms_used


class ConfigError(Hoc7Error, ValueError):
    """A run configuration failed validation."""
