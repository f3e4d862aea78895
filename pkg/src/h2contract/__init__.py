"""Helmholtz bases on the two-sheeted hyperboloid and their flat-plane contractions."""

from .errors import ConditioningError, ConvergenceError, DomainError, PoleError
from .geometry import AmbientPoint, ChartId, ChartPoint, EuclidPoint, Metric2

__version__ = "0.1.0"

__all__ = [
    "AmbientPoint", "ChartId", "ChartPoint", "EuclidPoint", "Metric2",
    "ConditioningError", "ConvergenceError", "DomainError", "PoleError",
    "__version__",
]
