"""
Declarative schemas for the optimizers: SPSA, the circuit-synthesis genetic
algorithm and approximate amplitude encoding.

Each schema validates itself on construction and serializes with to_dict().
"""

from dataclasses import asdict, dataclass, field
from typing import Dict, Optional, Tuple

from ...utils.errors import ConfigError


@dataclass(frozen=True)
class SpsaConfig:
    """
    Gain schedule and budget for SPSA.

    a_k = a0 / (k + 1 + A)^alpha and c_k = c0 / (k + 1)^gamma, where A is
    ``decay_A`` or 10% of the iteration budget when left unset.
    """
    a0: float = 0.2
    c0: float = 0.15
    decay_A: Optional[float] = None
    alpha: float = 0.602
    gamma: float = 0.101
    iterations: int = 2000
    seed: int = 0

    def __post_init__(self):
        if not (self.a0 > 0 and self.c0 > 0):
            raise ConfigError("SPSA gains a0 and c0 must be positive")
        if self.decay_A is not None and self.decay_A < 0:
            raise ConfigError("SPSA decay_A must be non-negative")
        if self.alpha <= 0 or self.gamma <= 0:
            raise ConfigError("SPSA exponents alpha and gamma must be positive")
        if self.iterations < 0:
            raise ConfigError("SPSA iterations must be non-negative")

    @property
    def stability(self) -> float:
        return 0.1 * self.iterations if self.decay_A is None else self.decay_A

    def step_size(self, k: int) -> float:
        return self.a0 / (k + 1 + self.stability) ** self.alpha

    def perturbation(self, k: int) -> float:
        return self.c0 / (k + 1) ** self.gamma

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class MutationRates:
    """Per-gene (angle jitter, substitution) and per-genome (insert, delete) probabilities."""
    angle_jitter: float = 0.3
    substitute: float = 0.05
    insert: float = 0.05
    delete: float = 0.05

    def __post_init__(self):
        for name, rate in asdict(self).items():
            if not 0.0 <= rate <= 1.0:
                raise ConfigError(f"Mutation rate {name}={rate} outside [0, 1]")


@dataclass(frozen=True)
class GaConfig:
    """Genetic-algorithm settings for circuit synthesis."""
    target_fidelity: float = 0.99
    population_size: int = 200
    max_generations: int = 300
    tournament_size: int = 3
    elitism_count: int = 2
    mutation_rates: MutationRates = field(default_factory=MutationRates)
    angle_jitter_sigma: float = 0.1
    max_genes: int = 40
    seed: int = 0

    # Breeding
    crossover_rate: float = 0.7
    initial_genes: int = 10
    kind_weights: Tuple[float, float, float] = (0.6, 0.1, 0.3)  # RY, RZ, CNOT

    # Share of generation 0 seeded with RY/CNOT ladders of depth 1..max_template_depth
    template_fraction: float = 0.25
    max_template_depth: int = 3

    # SPSA polishing of the best refine_elites genomes each generation
    refine_elites: int = 2
    refine_iterations: int = 60
    refine_a0: float = 0.8
    refine_c0: float = 0.1

    def __post_init__(self):
        if isinstance(self.mutation_rates, dict):
            object.__setattr__(self, "mutation_rates", MutationRates(**self.mutation_rates))
        object.__setattr__(self, "kind_weights", tuple(float(w) for w in self.kind_weights))
        if not 0.0 < self.target_fidelity <= 1.0:
            raise ConfigError(f"target_fidelity {self.target_fidelity} outside (0, 1]")
        if not self.population_size >= self.tournament_size >= 2:
            raise ConfigError("Need population_size >= tournament_size >= 2")
        if not 0 <= self.elitism_count < self.population_size:
            raise ConfigError("elitism_count must be below population_size")
        if self.max_generations < 0:
            raise ConfigError("max_generations must be non-negative")
        if self.max_genes < 1 or self.initial_genes < 1:
            raise ConfigError("max_genes and initial_genes must be at least 1")
        if self.angle_jitter_sigma < 0:
            raise ConfigError("angle_jitter_sigma must be non-negative")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ConfigError("crossover_rate outside [0, 1]")
        if len(self.kind_weights) != 3 or min(self.kind_weights) < 0 or sum(self.kind_weights) <= 0:
            raise ConfigError("kind_weights needs three non-negative weights with positive sum")
        if self.refine_iterations < 0 or self.refine_elites < 0:
            raise ConfigError("refine_iterations and refine_elites must be non-negative")
        if not 0.0 <= self.template_fraction <= 1.0:
            raise ConfigError("template_fraction outside [0, 1]")
        if self.max_template_depth < 1:
            raise ConfigError("max_template_depth must be at least 1")

    def refine_spsa(self, seed: int = 0) -> SpsaConfig:
        return SpsaConfig(
            a0=self.refine_a0,
            c0=self.refine_c0,
            iterations=self.refine_iterations,
            seed=seed,
        )

    def to_dict(self) -> Dict:
        record = asdict(self)
        record['kind_weights'] = list(self.kind_weights)
        return record


DEFAULT_SIGMA_GRID = (0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class AaeConfig:
    """Approximate amplitude encoding training settings."""
    layers: int = 3
    iterations: int = 2000
    kernel_sigma_grid: Tuple[float, ...] = DEFAULT_SIGMA_GRID
    seed: int = 0
    shots: Optional[int] = None
    hadamard_term: bool = True
    a0: float = 0.6
    c0: float = 0.15

    def __post_init__(self):
        object.__setattr__(self, "kernel_sigma_grid", tuple(float(s) for s in self.kernel_sigma_grid))
        if self.layers < 1:
            raise ConfigError("AAE needs at least one layer")
        if not self.kernel_sigma_grid or min(self.kernel_sigma_grid) <= 0:
            raise ConfigError("kernel_sigma_grid must be non-empty and positive")
        if self.iterations < 0:
            raise ConfigError("iterations must be non-negative")
        if self.shots is not None and self.shots < 1:
            raise ConfigError("shots must be positive when given")

    def spsa(self) -> SpsaConfig:
        return SpsaConfig(a0=self.a0, c0=self.c0, iterations=self.iterations, seed=self.seed)

    def to_dict(self) -> Dict:
        record = asdict(self)
        record['kernel_sigma_grid'] = list(self.kernel_sigma_grid)
        return record


def _filter(cls, values: Dict) -> Dict:
    known = set(cls.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"Unknown {cls.__name__} field(s): {', '.join(sorted(unknown))}")
    return dict(values)


def spsa_from_dict(values: Dict) -> SpsaConfig:
    return SpsaConfig(**_filter(SpsaConfig, values or {}))


def ga_from_dict(values: Dict) -> GaConfig:
    values = _filter(GaConfig, values or {})
    if 'mutation_rates' in values:
        values['mutation_rates'] = MutationRates(**_filter(MutationRates, values['mutation_rates']))
    return GaConfig(**values)


def aae_from_dict(values: Dict) -> AaeConfig:
    return AaeConfig(**_filter(AaeConfig, values or {}))

