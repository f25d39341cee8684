"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class WGOrderError(Exception):
    """Base class for all package errors."""


class ParameterDomainError(WGOrderError, ValueError):
    """A distribution, generator or system parameter lies outside its domain."""


class DimensionError(WGOrderError, ValueError):
    """Vectors or grids have incompatible or insufficient length."""


class SaturationError(WGOrderError, ArithmeticError):
    """The baseline cdf is numerically 1, so the odds w = F/(1-F) blows up.

    ``x`` is the first offending evaluation point (in the caller's units).
    """

    def __init__(self, x: float, message: str | None = None):
        self.x = float(x)
        super().__init__(message or f"odds saturated at x={self.x!r} (F > 1 - 1e-12)")


class GeneratorError(WGOrderError, ValueError):
    """An Archimedean generator was evaluated outside its domain or cannot be used."""


class UnsupportedRegimeError(WGOrderError):
    """The requested quantity is not defined for the system's dependence regime."""


class UnsupportedOrderError(WGOrderError, ValueError):
    """A derivative or monotonicity order beyond what the checks support."""


class EvaluationError(WGOrderError, ArithmeticError):
    """A function under test returned a non-finite value."""

    def __init__(self, x, message: str):
        self.x = x
        super().__init__(message)


class ConfigError(WGOrderError, ValueError):
    """Malformed configuration; ``where`` names the field or line."""

    def __init__(self, message: str, where: str | None = None):
        self.message = message
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class GenerationExhaustedError(WGOrderError, RuntimeError):
    """Random hypothesis generation gave up after its retry budget."""
