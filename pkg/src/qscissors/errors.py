"""Exception hierarchy.

Everything numeric derives from :class:`NumericFailure`, which the command
line maps to exit status 2.
"""


class QScissorsError(Exception):
    """Base class for all package errors."""


class NumericFailure(QScissorsError, ArithmeticError):
    """A computation could not be carried out to the required accuracy."""


class AllZero(NumericFailure):
    """Every weight handed to a normalizer was an exact zero."""


class NonPositiveNormSum(NumericFailure):
    """A normalization double sum came out non-positive or complex."""


class TailMassTooLarge(NumericFailure):
    """The Fock cutoff drops more probability than the tolerance allows."""


class ZeroMean(NumericFailure):
    """Fano factor requested for a distribution with vanishing mean."""
