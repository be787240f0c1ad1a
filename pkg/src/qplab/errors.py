"""Exception hierarchy shared by all qplab modules."""


class QPLabError(Exception):
    """Base class for every error raised by qplab."""


class ZeroDenominatorBinding(QPLabError, ZeroDivisionError):
    pass


class UnboundVariable(QPLabError, KeyError):
    pass


class DegenerateParameters(QPLabError, ValueError):
    pass


class SingularQuotient(QPLabError, ValueError):
    """An elliptic quotient has zero discriminant.

    ``factor`` names the offending curve (``"E0"`` or ``"E1"``).
    """

    def __init__(self, factor, message=None):
        self.factor = factor
        super().__init__(message or f"quotient {factor} is singular (discriminant 0)")


class SingularQuartic(QPLabError, ValueError):
    pass


class NonIntegralGenus(QPLabError, ValueError):
    pass


class SingularCurve(QPLabError, ValueError):
    pass


class TwoTorsionAbscissa(QPLabError, ZeroDivisionError):
    pass


class TwoTorsionInput(QPLabError, ValueError):
    pass


class NotAUnit(QPLabError, ValueError):
    pass


class SingularMobius(QPLabError, ValueError):
    pass


class CapExceeded(QPLabError, RuntimeError):
    pass
