"""Exception hierarchy shared by every module."""


class RenyiError(Exception):
    """Base class for all domain errors raised by the package."""


class InvalidParameters(RenyiError, ValueError):
    pass


class PointOutsideSupport(RenyiError, ValueError):
    pass


class FamilyMismatch(RenyiError, ValueError):
    pass


class SupportMismatch(RenyiError, ValueError):
    pass


class ConstraintViolated(RenyiError):
    """A positivity constraint of a closed form fails.

    The measure is undefined (the defining integral diverges) for this
    combination of parameters and order.
    """

    def __init__(self, name, value, detail=""):
        self.name = name
        self.value = value
        msg = f"constraint {name} violated (value {value!r})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NaturalParamOutOfDomain(ConstraintViolated):
    pass


class DivergentIntegral(RenyiError):
    pass


class NonConvergent(RenyiError):
    pass


class InfiniteVariance(RenyiError):
    pass


class NotPositiveDefinite(RenyiError):
    pass


class NonUniqueStationary(RenyiError):
    pass


class ZeroMatrix(RenyiError, ValueError):
    pass


class QNotPositive(RenyiError, ValueError):
    pass


class InitialNotPositive(RenyiError, ValueError):
    pass


class BudgetExceeded(RenyiError):
    pass


class ParseError(RenyiError, ValueError):
    pass
