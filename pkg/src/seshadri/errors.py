"""Exception hierarchy shared by all modules."""


class SeshadriError(ValueError):
    """Base class for every error raised by this package."""


class BadDimension(SeshadriError):
    pass


class NotSymmetric(SeshadriError):
    pass


class NotPositiveDefinite(SeshadriError):
    pass


class NumericalBreakdown(SeshadriError, ArithmeticError):
    """Gram-Schmidt lost positivity; the input is too ill-conditioned for float64."""


class DimensionTooLarge(SeshadriError):
    pass


class BoxTooSmall(SeshadriError):
    pass


class GenusTooSmall(SeshadriError):
    pass


class BadGonality(SeshadriError):
    pass


class GenusMismatch(SeshadriError):
    pass


class BadMultiplicity(SeshadriError):
    pass


class DegenerateLinear(SeshadriError, ArithmeticError):
    pass


class ZeroInput(SeshadriError):
    pass


class StepTooSmall(SeshadriError):
    pass


class ConsistencyViolation(SeshadriError, AssertionError):
    """A computed value contradicts a proven inequality (bug or invalid input)."""
