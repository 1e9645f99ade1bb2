"""
Configuration schemas: optimizer settings and experiment plans.
"""

from .optimizer_schema import (
    AaeConfig,
    GaConfig,
    MutationRates,
    SpsaConfig,
    aae_from_dict,
    ga_from_dict,
    spsa_from_dict,
)
from .experiment_schema import DEFAULT_TARGET_FIDELITIES, ExperimentPlan, Method

__all__ = [
    "AaeConfig",
    "DEFAULT_TARGET_FIDELITIES",
    "ExperimentPlan",
    "GaConfig",
    "Method",
    "MutationRates",
    "SpsaConfig",
    "aae_from_dict",
    "ga_from_dict",
    "spsa_from_dict",
]
