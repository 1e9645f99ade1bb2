"""
Maximum mean discrepancy between distributions over basis indices.

    gamma^2 = sum_jk (q_j - p_j)(q_k - p_k) K(j, k)

with a Gaussian mixture kernel K(j, k) = mean_sigma exp(-(j - k)^2 / (2 sigma^2)).
"""

from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from ...config.schemas.optimizer_schema import DEFAULT_SIGMA_GRID
from ...utils.errors import ArgumentError

SUM_TOLERANCE = 1e-9


@lru_cache(maxsize=32)
def _kernel(dim: int, sigma_grid: Tuple[float, ...]) -> np.ndarray:
    index = np.arange(dim, dtype=float)
    squared = (index[:, None] - index[None, :]) ** 2
    kernel = np.mean([np.exp(-squared / (2.0 * s * s)) for s in sigma_grid], axis=0)
    kernel.setflags(write=False)
    return kernel


def gaussian_kernel(dim: int, sigma_grid: Sequence[float] = DEFAULT_SIGMA_GRID) -> np.ndarray:
    """The dim x dim kernel matrix over basis indices (read-only, cached)."""
    sigma_grid = tuple(float(s) for s in sigma_grid)
    if not sigma_grid or min(sigma_grid) <= 0:
        raise ArgumentError("sigma_grid must be non-empty and positive")
    return _kernel(int(dim), sigma_grid)


def _check_distribution(name: str, values: np.ndarray) -> None:
    if values.ndim != 1:
        raise ArgumentError(f"{name} must be a vector, got shape {values.shape}")
    if np.any(values < 0):
        raise ArgumentError(f"{name} has negative entries")
    total = float(values.sum())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise ArgumentError(f"{name} sums to {total:.12g}, not 1")


def mmd_cost(q, p, sigma_grid: Sequence[float] = DEFAULT_SIGMA_GRID) -> float:
    """Squared MMD of two probability vectors of equal length."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    if q.shape != p.shape:
        raise ArgumentError(f"Length mismatch: {q.shape} vs {p.shape}")
    _check_distribution("q", q)
    _check_distribution("p", p)
    diff = q - p
    return max(0.0, float(diff @ gaussian_kernel(q.shape[0], sigma_grid) @ diff))
