"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its budget.

    Carries the best available partial result and its error estimate so
    callers can decide whether the partial answer is still usable.
    """

    def __init__(self, message, partial=None, error=None):
        super().__init__(message)
        self.partial = partial
        self.error = error


class NumericalError(RuntimeError):
    """A backend numerical routine failed (eigensolver breakdown etc.)."""
