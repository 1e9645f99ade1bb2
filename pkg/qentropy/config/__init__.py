"""
Declarative configuration system for qentropy.

Provides schema-based configuration for optimizers and experiment plans.
"""

from .loader import ConfigLoader

__all__ = ["ConfigLoader"]
