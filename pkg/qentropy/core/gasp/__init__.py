"""
Genetic-algorithm synthesis of state-preparation circuits.
"""

from .genome import (
    Gene,
    Genome,
    identity_genome,
    ladder_genes,
    ladder_genome,
    random_gene,
    random_genome,
    wrap_angle,
)
from .operators import crossover, crossover_at, fitness, mutate, refine_angles, tournament
from .synthesis import SynthesisResult, synthesize

__all__ = [
    "Gene",
    "Genome",
    "SynthesisResult",
    "crossover",
    "crossover_at",
    "fitness",
    "identity_genome",
    "ladder_genes",
    "ladder_genome",
    "mutate",
    "random_gene",
    "random_genome",
    "refine_angles",
    "synthesize",
    "tournament",
    "wrap_angle",
]
