"""Exception types shared across the package."""


class OperatorEntropyError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(OperatorEntropyError):
    """Malformed matrix input: wrong shape, asymmetry, non-finite entries,
    or a matrix that is not strictly positive definite."""


class InvalidWeight(OperatorEntropyError):
    """Weight parameter outside the range a mean or entropy is defined for."""


class DomainError(OperatorEntropyError):
    """A scalar function was evaluated outside its domain (non-finite values
    on the spectrum)."""


class NumericalBreakdown(OperatorEntropyError):
    """A computed matrix lost strict positive definiteness to rounding."""


class HypothesisError(OperatorEntropyError):
    """An inequality was evaluated outside its hypothesis region."""


class NoDual(OperatorEntropyError):
    """Requested the reversed form of an inequality that has none."""


class ReportError(OperatorEntropyError):
    """A report stream could not be parsed; message carries the line number."""
