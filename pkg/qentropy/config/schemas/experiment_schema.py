"""
Declarative schema for a sliding-window entropy sweep.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from ...utils.errors import ConfigError
from .optimizer_schema import AaeConfig, GaConfig, SpsaConfig

DEFAULT_TARGET_FIDELITIES = (0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.99)


class Method(Enum):
    """State-preparation method feeding VQSVD."""
    GASP = "gasp"
    AAE = "aae"
    EXACT = "exact"


@dataclass
class ExperimentPlan:
    """
    Everything a sweep needs: input data, methods, fidelity levels, seeds
    and optimizer settings.
    """
    input_path: str
    output_path: str = "results"
    window_length_months: int = 5
    methods: List[Method] = field(default_factory=lambda: [Method.GASP])
    gasp_target_fidelities: Tuple[float, ...] = DEFAULT_TARGET_FIDELITIES
    seeds: List[int] = field(default_factory=lambda: [0])
    vqsvd_layers: int = 3
    vqsvd_restarts: int = 4

    # Optimizer templates; per-cell seeds and fidelities are filled in by the runner
    spsa: SpsaConfig = field(default_factory=SpsaConfig)
    ga: GaConfig = field(default_factory=GaConfig)
    aae: AaeConfig = field(default_factory=AaeConfig)

    # Execution
    shots: Optional[int] = None
    workers: int = 1
    record_wall_time: bool = False
    plot_data: bool = False

    def __post_init__(self):
        self.methods = [m if isinstance(m, Method) else Method(m) for m in self.methods]
        self.gasp_target_fidelities = tuple(float(f) for f in self.gasp_target_fidelities)
        self.seeds = [int(s) for s in self.seeds]
        if self.window_length_months < 2:
            raise ConfigError("window_length_months must be at least 2")
        for fid in self.gasp_target_fidelities:
            if not 0.0 < fid <= 1.0:
                raise ConfigError(f"Target fidelity {fid} outside (0, 1]")
        if Method.GASP in self.methods and not self.gasp_target_fidelities:
            raise ConfigError("gasp method needs at least one target fidelity")
        if self.vqsvd_layers < 1 or self.vqsvd_restarts < 1:
            raise ConfigError("vqsvd_layers and vqsvd_restarts must be at least 1")
        if self.shots is not None and self.shots < 1:
            raise ConfigError("shots must be positive when given")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if len(set(self.methods)) != len(self.methods):
            raise ConfigError("methods must not repeat")

    def cell_fidelities(self, method: Method) -> Tuple[Optional[float], ...]:
        """Fidelity levels a method expands into (None for non-GASP methods)."""
        if method is Method.GASP:
            return self.gasp_target_fidelities
        return (None,)

    def to_dict(self) -> Dict:
        """Convert plan to dictionary for serialization."""
        return {
            'input_path': self.input_path,
            'output_path': self.output_path,
            'window_length_months': self.window_length_months,
            'methods': [m.value for m in self.methods],
            'gasp_target_fidelities': list(self.gasp_target_fidelities),
            'seeds': list(self.seeds),
            'vqsvd_layers': self.vqsvd_layers,
            'vqsvd_restarts': self.vqsvd_restarts,
            'spsa': self.spsa.to_dict(),
            'ga': self.ga.to_dict(),
            'aae': self.aae.to_dict(),
            'shots': self.shots,
            'workers': self.workers,
            'record_wall_time': self.record_wall_time,
            'plot_data': self.plot_data,
        }
