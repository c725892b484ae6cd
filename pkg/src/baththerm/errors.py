"""
Exception hierarchy. Every error knows the process exit status the CLI reports for it.
"""

from __future__ import annotations

__all__ = [
    'BathThermError',
    'DomainError',
    'BranchCutError',
    'PoleError',
    'InvalidParameterError',
    'ConfigError',
    'QuadratureError',
    'AsymptoticDivergenceError',
    'PrecisionError',
    'DivergenceError',
]


class BathThermError(Exception):
    exit_code: int = 1


# Invalid input (exit 2)

class DomainError(BathThermError, ValueError):
    """Argument lies outside the region where the requested method is valid."""
    exit_code = 2


class BranchCutError(DomainError):
    """Argument sits on the cut along the negative real axis."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class InvalidParameterError(BathThermError, ValueError):
    exit_code = 2


class ConfigError(InvalidParameterError):
    pass


# Numerical failure (exit 3)

class QuadratureError(BathThermError, ArithmeticError):
    exit_code = 3

    def __init__(
        self,
        message: str,
        /,
        *,
        estimate: float = float('nan'),
        error: float = float('inf'),
        abscissa: float | None = None,
    ):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
        self.abscissa = abscissa


class AsymptoticDivergenceError(BathThermError, ArithmeticError):
    exit_code = 3


class PrecisionError(BathThermError, ArithmeticError):
    exit_code = 3


# Divergent physical quantity (exit 4)

class DivergenceError(BathThermError, ArithmeticError):
    exit_code = 4

    def __init__(self, message: str, /, *, model: str | None = None):
        super().__init__(message)
        self.model = model
