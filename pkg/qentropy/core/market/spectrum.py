"""
Classical eigen-oracle: cyclic Jacobi diagonalization and SVD entropy.
"""

import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from ...utils.errors import ArgumentError
from .returns import CorrelationMatrix

SYMMETRY_TOLERANCE = 1e-9
ENTROPY_CUTOFF = 1e-12


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] in place with one Jacobi rotation, accumulating it into v."""
    theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p, col_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0

    vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vec_p - s * vec_q
    v[:, q] = s * vec_p + c * vec_q


def eigen_symmetric(
    m: np.ndarray,
    tol: float = 1e-15,
    max_sweeps: int = 100,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Returns:
        (eigenvalues, eigenvectors) with eigenvalues descending and the
        matching orthonormal eigenvectors as columns.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ArgumentError(f"Matrix must be square, got shape {m.shape}")
    if m.size and np.max(np.abs(m - m.T)) > SYMMETRY_TOLERANCE:
        raise ArgumentError("Matrix must be symmetric")

    n = m.shape[0]
    a = 0.5 * (m + m.T)
    v = np.eye(n)
    scale = max(float(np.linalg.norm(a)), 1.0)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > tol * scale * 1e-3:
                    _rotate(a, v, p, q)

    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


def entropy_from_weights(weights, cutoff: float = ENTROPY_CUTOFF) -> float:
    """-sum w ln w over weights above ``cutoff`` (zero weights contribute 0)."""
    weights = np.asarray(weights, dtype=float)
    positive = weights[weights > cutoff]
    return float(-np.sum(positive * np.log(positive)))


@dataclass(frozen=True, eq=False)
class EntropyReport:
    """Descending spectrum and its SVD entropy in nats."""
    eigenvalues: np.ndarray
    entropy: float

    def to_dict(self) -> Dict:
        return {
            'eigenvalues': [float(x) for x in self.eigenvalues],
            'entropy': self.entropy,
        }


def svd_entropy_oracle(c: CorrelationMatrix) -> EntropyReport:
    """Exact SVD entropy from the diagonalized correlation matrix."""
    eigenvalues, _ = eigen_symmetric(c.c)
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    return EntropyReport(eigenvalues=eigenvalues, entropy=entropy_from_weights(eigenvalues))
