"""Exception hierarchy shared by every module.

The CLI reports domain errors by class name, so the names are part of the
external interface and must not be renamed casually.
"""


class IwasawaError(Exception):
    """Base class for all domain errors raised by this package."""


class NonPrime(IwasawaError, ValueError):
    pass


class IndexOutOfRange(IwasawaError, IndexError):
    pass


class DimensionMismatch(IwasawaError, ValueError):
    pass


class SingularMatrix(IwasawaError, ArithmeticError):
    pass


class ZeroPivot(IwasawaError, ArithmeticError):
    pass


class NotSpecialLinear(IwasawaError, ValueError):
    pass


class InvalidFamilyParams(IwasawaError, ValueError):
    pass


class PrecisionLoss(IwasawaError, ArithmeticError):
    pass


class ZeroVector(IwasawaError, ValueError):
    pass
