"""
Simultaneous perturbation stochastic approximation.

Each iteration draws a Rademacher direction, estimates the gradient from two
objective evaluations and takes a gain-scheduled step. The best iterate seen
(including the starting point) is returned.
"""

import logging
import math
from typing import Callable, List, Tuple

import numpy as np

from ...config.schemas.optimizer_schema import SpsaConfig
from ...utils.errors import OptimizationError

logger = logging.getLogger(__name__)

Objective = Callable[[np.ndarray], float]


def _evaluate(objective: Objective, x: np.ndarray, iteration: int) -> float:
    value = float(objective(x))
    if not math.isfinite(value):
        raise OptimizationError(
            f"Objective returned {value} at iteration {iteration}", iteration=iteration
        )
    return value


def spsa_minimize(
    objective: Objective,
    x0,
    config: SpsaConfig,
) -> Tuple[np.ndarray, List[float]]:
    """
    Minimize ``objective`` from ``x0``.

    Returns:
        (x_best, trace) where trace[k] is the objective at iterate k+1 and
        x_best is the argmin over x0 and every iterate.
    """
    x = np.array(x0, dtype=float)
    rng = np.random.default_rng(config.seed)
    best_x = x.copy()
    best_value = _evaluate(objective, x, 0) if config.iterations else math.inf
    trace: List[float] = []

    for k in range(config.iterations):
        a_k = config.step_size(k)
        c_k = config.perturbation(k)
        delta = rng.integers(0, 2, size=x.shape) * 2.0 - 1.0
        plus = _evaluate(objective, x + c_k * delta, k)
        minus = _evaluate(objective, x - c_k * delta, k)
        gradient = (plus - minus) / (2.0 * c_k) / delta
        x = x - a_k * gradient
        value = _evaluate(objective, x, k + 1)
        trace.append(value)
        if value < best_value:
            best_value = value
            best_x = x.copy()
        if (k + 1) % 100 == 0:
            logger.debug("SPSA iteration %d: loss %.6g (best %.6g)", k + 1, value, best_value)

    return best_x, trace
