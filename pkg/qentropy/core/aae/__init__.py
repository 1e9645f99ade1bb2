"""
Approximate amplitude encoding baseline trained on dual-basis MMD costs.
"""

from .mmd import gaussian_kernel, mmd_cost
from .training import AaeObjective, AaeResult, aae_parameter_count, build_aae_ansatz, train_aae

__all__ = [
    "AaeObjective",
    "AaeResult",
    "aae_parameter_count",
    "build_aae_ansatz",
    "gaussian_kernel",
    "mmd_cost",
    "train_aae",
]
