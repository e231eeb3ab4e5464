"""Exception hierarchy shared by every module."""


class ArrmodError(Exception):
    """Base class for all domain errors raised by :mod:`arrmod`."""


class InvalidCombinatorics(ArrmodError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DegenerateArrangement(ArrmodError):
    pass


class AmbiguousTolerance(ArrmodError):
    pass


class CapExceeded(ArrmodError):
    """A bounded search ran out of budget; the answer is unknown, not negative."""


class NotApplicable(ArrmodError):
    pass


class InvalidTarget(ArrmodError):
    pass


class UnknownPoint(ArrmodError):
    pass


class ArityMismatch(ArrmodError):
    pass


class ZeroPolynomial(ArrmodError):
    pass


class ConvergenceFailure(ArrmodError):
    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class UnsafeSeparation(ArrmodError):
    pass


class Unsupported(ArrmodError):
    pass


class NotARealization(ArrmodError):
    pass


class InternalContradiction(ArrmodError):
    pass


class NotPrime(ArrmodError):
    pass


class NotC3(ArrmodError):
    pass
