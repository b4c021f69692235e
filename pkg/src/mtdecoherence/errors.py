"""Exception hierarchy shared by the package."""


class DecoherenceError(Exception):
    """Base class for all errors raised by mtdecoherence."""


class DimensionError(DecoherenceError, TypeError):
    """Operation combines quantities with incompatible dimensions."""


class DomainError(DecoherenceError, ValueError):
    """An argument lies outside the domain of a formula."""


class NonFiniteError(DecoherenceError, ArithmeticError):
    """An arithmetic result overflowed or became NaN."""


class SingularityError(DomainError):
    """A potential was evaluated at a singular point."""


class ConvergenceError(DecoherenceError, RuntimeError):
    """Adaptive quadrature did not reach its tolerance.

    ``worst_interval`` holds ``(a, b, error_estimate)`` for the subinterval
    with the largest remaining error.
    """

    def __init__(self, message, worst_interval=None):
        super().__init__(message)
        self.worst_interval = worst_interval


class NoCrossingError(DecoherenceError, ValueError):
    """A decay curve never fell below the requested threshold."""
