"""
Genetic operators over genomes: fitness, mutation, crossover, tournament
selection and SPSA polishing of rotation angles.
"""

from dataclasses import replace
from typing import Optional, Sequence, Tuple

import numpy as np

from ...config.schemas.optimizer_schema import GaConfig, SpsaConfig
from ...utils.errors import CircuitError
from ..sim.circuit import apply_circuit
from ..sim.statevector import StateVector, fidelity
from ..vqsvd.spsa import spsa_minimize
from .genome import Genome, random_gene


def fitness(genome: Genome, target: StateVector) -> float:
    """Fidelity of the genome's circuit applied to |0...0> with ``target``."""
    if genome.n_qubits != target.n_qubits:
        raise CircuitError(
            f"Genome acts on {genome.n_qubits} qubits, target has {target.n_qubits}"
        )
    prepared = apply_circuit(StateVector.zero(genome.n_qubits), genome.to_circuit())
    return fidelity(prepared, target)


def mutate(genome: Genome, config: GaConfig, rng: np.random.Generator) -> Genome:
    """
    Per gene: substitution and angle jitter are separate draws, so a
    substituted rotation can also be jittered. Per genome: one insertion
    draw and one deletion draw.
    """
    rates = config.mutation_rates
    genes = []
    for gene in genome.genes:
        if rng.random() < rates.substitute:
            gene = random_gene(genome.n_qubits, rng, config.kind_weights)
        if rng.random() < rates.angle_jitter and gene.is_rotation:
            gene = gene.with_angle(gene.angle + rng.normal(0.0, config.angle_jitter_sigma))
        genes.append(gene)

    if rng.random() < rates.insert and len(genes) < config.max_genes:
        position = int(rng.integers(len(genes) + 1))
        genes.insert(position, random_gene(genome.n_qubits, rng, config.kind_weights))
    if rng.random() < rates.delete and len(genes) > 1:
        del genes[int(rng.integers(len(genes)))]
    return genome.with_genes(genes)


def crossover_at(
    parent_a: Genome,
    parent_b: Genome,
    cut_a: int,
    cut_b: int,
    max_genes: Optional[int] = None,
) -> Tuple[Genome, Genome]:
    """
    Single-point crossover at fixed cuts: a[:cut_a] + b[cut_b:] and
    b[:cut_b] + a[cut_a:]. Cuts that would leave a child empty return the
    parents unchanged.
    """
    if parent_a.n_qubits != parent_b.n_qubits:
        raise CircuitError(
            f"Cannot cross {parent_a.n_qubits}- and {parent_b.n_qubits}-qubit genomes"
        )
    first = parent_a.genes[:cut_a] + parent_b.genes[cut_b:]
    second = parent_b.genes[:cut_b] + parent_a.genes[cut_a:]
    if not first or not second:
        return parent_a, parent_b
    if max_genes is not None:
        first, second = first[:max_genes], second[:max_genes]
    return parent_a.with_genes(first), parent_b.with_genes(second)


def crossover(
    parent_a: Genome,
    parent_b: Genome,
    rng: np.random.Generator,
    max_genes: Optional[int] = None,
) -> Tuple[Genome, Genome]:
    """Single-point crossover with an independent cut in each parent."""
    if parent_a.n_qubits != parent_b.n_qubits:
        raise CircuitError(
            f"Cannot cross {parent_a.n_qubits}- and {parent_b.n_qubits}-qubit genomes"
        )
    if parent_a.genes == parent_b.genes:
        return parent_a, parent_b
    cut_a = int(rng.integers(len(parent_a) + 1))
    cut_b = int(rng.integers(len(parent_b) + 1))
    return crossover_at(parent_a, parent_b, cut_a, cut_b, max_genes)


def tournament(scores: Sequence[float], size: int, rng: np.random.Generator) -> int:
    """Index of the fittest of ``size`` distinct random contestants."""
    contestants = rng.choice(len(scores), size=size, replace=False)
    return int(max(contestants, key=lambda i: (scores[i], -i)))


DEFAULT_REFINE_GAINS = GaConfig().refine_spsa()


def refine_angles(
    genome: Genome,
    target: StateVector,
    iterations: int,
    rng: np.random.Generator,
    gains: SpsaConfig = DEFAULT_REFINE_GAINS,
) -> Genome:
    """
    Tune rotation angles with SPSA at fixed gate structure.

    ``gains`` supplies the SPSA schedule; its iteration count and seed are
    replaced by ``iterations`` and a draw from ``rng``. The returned genome
    is never less fit than the input: a worse final candidate is discarded.
    """
    start = genome.angles()
    if start.size == 0 or iterations <= 0:
        return genome
    config = replace(gains, iterations=iterations, seed=int(rng.integers(2**63)))

    def objective(angles: np.ndarray) -> float:
        return 1.0 - fitness(genome.with_angles(angles), target)

    best_angles, _ = spsa_minimize(objective, start, config)
    refined = genome.with_angles(best_angles)
    if fitness(refined, target) < fitness(genome, target):
        return genome
    return refined
