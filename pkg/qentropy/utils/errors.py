"""
Exception hierarchy for qentropy.

Every error raised by the library derives from QEntropyError. The argument
and data families also derive from ValueError so callers can keep catching
plain ValueError.
"""

from typing import Optional


class QEntropyError(Exception):
    """Base class for all qentropy errors."""


class ArgumentError(QEntropyError, ValueError):
    """An argument violates an operation's precondition."""


class CircuitError(ArgumentError):
    """Structural problem: qubit index, register size or qubit-count mismatch."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class ConfigError(ArgumentError):
    """Invalid configuration value."""


class DataError(QEntropyError, ValueError):
    """Input data is malformed or inconsistent."""


class DegenerateDataError(DataError):
    """A stock has zero return variance over a window."""

    def __init__(self, message: str, symbol: Optional[str] = None):
        super().__init__(message)
        self.symbol = symbol


class ShapeError(DataError):
    """Panel dimensions cannot be amplitude-encoded."""


class OptimizationError(QEntropyError, RuntimeError):
    """An optimizer met a non-finite objective or failed outright."""

    def __init__(self, message: str, iteration: Optional[int] = None):
        super().__init__(message)
        self.iteration = iteration


class DegenerateExtractionError(OptimizationError):
    """Almost no probability mass landed on matched basis pairs."""
