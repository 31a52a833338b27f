"""Exception hierarchy shared by all modules."""


class MixedMeansError(Exception):
    pass


class InvalidInputError(MixedMeansError, ValueError):
    pass


class DomainError(MixedMeansError, ValueError):
    """An argument lies outside the set where the quantity is defined."""


class SingularParameterError(DomainError):
    pass


class ZeroConstantTermError(DomainError):
    """Square root requested for a series vanishing at the origin."""


class ToleranceNotMetError(MixedMeansError, ArithmeticError):
    """Quadrature could not reach the requested tolerance.

    The best available estimate and its error are kept on the exception so
    callers can still inspect them.
    """

    def __init__(self, message, estimate=float("nan"), error=float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
