"""Exception types shared by every module."""


class DomainError(ValueError):
    """An argument lies outside the domain where a representation is defined."""


class ToleranceError(ArithmeticError):
    """The quadrature engine could not meet the requested tolerance.

    The best estimate found and its error estimate are kept on the
    exception so callers can decide whether they are good enough.
    """

    def __init__(self, message, value, est_error, evaluations=0):
        super().__init__(message)
        self.value = value
        self.est_error = est_error
        self.evaluations = evaluations


class ConvergenceError(ArithmeticError):
    """A series failed to converge within its term cap, or produced non-finite values."""
