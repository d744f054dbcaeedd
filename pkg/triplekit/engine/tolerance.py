"""Numerical tolerance shared by all boolean predicates."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerance:
    """A residual passes when ``residual <= abs + rel * max(1, scales...)``."""

    abs: float = 1e-9
    rel: float = 1e-9

    def __post_init__(self):
        if not (self.abs > 0 and self.rel > 0):
            raise ValueError("tolerance components must be positive")

    def bound(self, *scales: float) -> float:
        return self.abs + self.rel * max(1.0, *scales) if scales else self.abs + self.rel

    def accepts(self, residual: float, *scales: float) -> bool:
        return residual <= self.bound(*scales)


DEFAULT_TOLERANCE = Tolerance()
