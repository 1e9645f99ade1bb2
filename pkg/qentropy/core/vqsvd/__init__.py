"""
Variational quantum SVD: ansatz circuits, Hamming-distance cost, SPSA and
Schmidt-weight extraction.
"""

from .ansatz import AnsatzSpec, ParamVector, build_ansatz, register_pair_circuit
from .cost import CostMode, prepared_state, svd_cost, transformed_state
from .solver import VqsvdResult, reconstruct_correlation, run_vqsvd
from .spsa import spsa_minimize

__all__ = [
    "AnsatzSpec",
    "CostMode",
    "ParamVector",
    "VqsvdResult",
    "build_ansatz",
    "prepared_state",
    "reconstruct_correlation",
    "register_pair_circuit",
    "run_vqsvd",
    "spsa_minimize",
    "svd_cost",
    "transformed_state",
]
