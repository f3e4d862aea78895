"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the region where an operation is defined."""


class PoleError(DomainError):
    """Argument hits a pole of the gamma function.

    Attributes
    ----------
    n : int
        The nonpositive integer that was hit.
    """

    def __init__(self, n: int, message: str | None = None):
        self.n = int(n)
        super().__init__(message or f"gamma pole at z = {self.n}")


class ConvergenceError(RuntimeError):
    """A series or quadrature did not reach the requested tolerance.

    Attributes
    ----------
    report : object
        Partial result (e.g. a ``SeriesReport``) at the point of failure.
    """

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class ConditioningError(ValueError):
    """A linear solve or comparison is too badly conditioned to trust."""
