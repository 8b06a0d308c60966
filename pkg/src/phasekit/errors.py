"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class NumericError(RuntimeError):
    """A numerical procedure failed or did not converge.

    When a quadrature fails to converge, the best available estimate is
    attached as the ``estimate`` attribute.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
