class UnsupportedLevel(ValueError):
    pass


class PrecisionError(ArithmeticError):
    """The requested error target was not met even at the maximal working precision."""


class TruncationError(ArithmeticError):
    """A series was used beyond the order to which it is known."""


class NonIntegralCoefficient(TruncationError):
    pass


class NonvanishingRemainder(TruncationError):
    pass


class RoundingUncertified(PrecisionError):
    pass


class NonrealTrace(ArithmeticError):
    pass


class PoleError(ValueError):
    """j_N was requested at the cusp infinity, where it has its pole."""
