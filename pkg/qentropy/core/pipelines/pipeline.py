"""
Functional stage pipeline.

A Pipeline threads one value through an ordered list of pure stages with
toolz.pipe. The sweep harness builds each experiment cell as a pipeline of
panel -> preparation -> VQSVD -> record stages.
"""

import logging
from typing import Any, Callable, Tuple

from funcy import log_durations
from toolz import compose_left, pipe

logger = logging.getLogger(__name__)

Stage = Callable[[Any], Any]


def stage_name(stage: Stage) -> str:
    return getattr(stage, "__name__", type(stage).__name__)


class Pipeline:
    """
    Immutable ordered sequence of stages.

    pipeline(x) == stages[-1](...stages[1](stages[0](x)))
    """

    def __init__(self, *stages: Stage):
        self._stages: Tuple[Stage, ...] = tuple(stages)

    def __call__(self, data: Any) -> Any:
        return pipe(data, *self._stages)

    def then(self, stage: Stage) -> "Pipeline":
        """New pipeline with ``stage`` appended."""
        return Pipeline(*self._stages, stage)

    def timed(self, print_func: Callable[[str], None] = logger.debug) -> "Pipeline":
        """New pipeline whose stages log their durations through ``print_func``."""
        return Pipeline(*(log_durations(print_func, stage_name(s))(s) for s in self._stages))

    def as_function(self) -> Stage:
        return compose_left(*self._stages) if self._stages else (lambda data: data)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(stage_name(s) for s in self._stages)

    def __len__(self) -> int:
        return len(self._stages)

    def __repr__(self) -> str:
        return f"Pipeline({' -> '.join(self.names)})"
