"""
Evolve loop for genetic state-preparation synthesis.

Generation 0 holds an identity genome, a share of RY/CNOT ladder templates
and random genomes. Each later generation keeps the elites (the best few
polished by SPSA), then fills the remaining slots by tournament selection,
crossover and mutation. Every slot draws from its own stream derived from
(seed, generation, slot), so fanning fitness evaluation out to a worker
pool changes nothing.
"""

import functools
import logging
import time
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from ...config.schemas.optimizer_schema import GaConfig
from ...utils.seeding import make_rng
from ..sim.circuit import GateCircuit, circuit_to_dict
from ..sim.statevector import StateVector, as_real_target
from .genome import Genome, identity_genome, ladder_genes, ladder_genome, random_genome
from .operators import crossover, fitness, mutate, refine_angles, tournament

logger = logging.getLogger(__name__)

LOG_EVERY = 25


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    circuit: GateCircuit
    achieved_fidelity: float
    generations_used: int
    cnot_count: int
    total_gate_count: int
    fitness_history: List[float] = field(default_factory=list)
    converged: bool = False
    target_fidelity: float = 1.0
    wall_time: float = 0.0

    def to_dict(self, include_wall_time: bool = False) -> Dict:
        return {
            'circuit': circuit_to_dict(self.circuit, method="gasp"),
            'achieved_fidelity': self.achieved_fidelity,
            'target_fidelity': self.target_fidelity,
            'converged': self.converged,
            'generations_used': self.generations_used,
            'cnot_count': self.cnot_count,
            'total_gate_count': self.total_gate_count,
            'fitness_history': [float(f) for f in self.fitness_history],
            'wall_time': self.wall_time if include_wall_time else 0.0,
        }


def _evaluate(
    genomes: Sequence[Genome],
    target: StateVector,
    executor: Optional[Executor],
) -> List[float]:
    if executor is None or len(genomes) < 2:
        return [fitness(g, target) for g in genomes]
    # map preserves input order
    return list(executor.map(functools.partial(fitness, target=target), genomes))


def _template_depth_limit(n_qubits: int, config: GaConfig) -> int:
    depth = 0
    while depth < config.max_template_depth and ladder_genes(n_qubits, depth + 1) <= config.max_genes:
        depth += 1
    return depth


def _initial_population(n_qubits: int, config: GaConfig) -> List[Genome]:
    population = [identity_genome(n_qubits)]
    length = min(config.initial_genes, config.max_genes)
    depth_limit = _template_depth_limit(n_qubits, config)
    templates = 0
    if depth_limit:
        templates = int(round(config.template_fraction * (config.population_size - 1)))
    for slot in range(1, config.population_size):
        rng = make_rng(config.seed, 0, slot)
        if slot <= templates:
            depth = int(rng.integers(1, depth_limit + 1))
            population.append(ladder_genome(n_qubits, depth, rng))
        else:
            population.append(random_genome(n_qubits, rng, length, config.kind_weights))
    return population


def _polish(
    elites: List[Genome],
    elite_scores: List[float],
    target: StateVector,
    config: GaConfig,
    generation: int,
) -> None:
    gains = config.refine_spsa()
    for rank in range(min(config.refine_elites, len(elites))):
        rng = make_rng(config.seed, generation, config.population_size + rank)
        elites[rank] = refine_angles(elites[rank], target, config.refine_iterations, rng, gains)
        elite_scores[rank] = fitness(elites[rank], target)


def _breed(
    population: Sequence[Genome],
    scores: Sequence[float],
    config: GaConfig,
    generation: int,
    slot: int,
) -> Genome:
    rng = make_rng(config.seed, generation, slot)
    parent_a = population[tournament(scores, config.tournament_size, rng)]
    parent_b = population[tournament(scores, config.tournament_size, rng)]
    child = parent_a
    if rng.random() < config.crossover_rate:
        child, _ = crossover(parent_a, parent_b, rng, config.max_genes)
    return mutate(child, config, rng)


def synthesize(
    target: Union[StateVector, Sequence[float], np.ndarray],
    config: GaConfig,
    executor: Optional[Executor] = None,
) -> SynthesisResult:
    """
    Evolve a circuit preparing ``target`` from |0...0>.

    Args:
        target: Real unit-norm target state.
        config: GA settings; ``target_fidelity`` is the stopping criterion.
        executor: Optional pool for fitness evaluation.

    Returns:
        The best circuit found. ``converged`` is False when the generation
        budget ran out below the target fidelity.
    """
    target = as_real_target(target)
    started = time.perf_counter()

    population = _initial_population(target.n_qubits, config)
    scores = _evaluate(population, target, executor)
    best_index = int(np.argmax(scores))
    history = [scores[best_index]]
    generation = 0

    while history[-1] < config.target_fidelity and generation < config.max_generations:
        generation += 1
        order = sorted(range(len(population)), key=lambda i: (-scores[i], i))
        elites = [population[i] for i in order[:config.elitism_count]]
        elite_scores = [scores[i] for i in order[:config.elitism_count]]
        _polish(elites, elite_scores, target, config, generation)

        children = [
            _breed(population, scores, config, generation, slot)
            for slot in range(config.elitism_count, config.population_size)
        ]
        population = elites + children
        scores = elite_scores + _evaluate(children, target, executor)
        best_index = int(np.argmax(scores))
        history.append(scores[best_index])

        if generation % LOG_EVERY == 0:
            logger.info(
                "Generation %d: best fidelity %.6f (%d genes)",
                generation, history[-1], len(population[best_index]),
            )

    best = population[best_index]
    circuit = best.to_circuit()
    result = SynthesisResult(
        circuit=circuit,
        achieved_fidelity=fitness(best, target),
        generations_used=generation,
        cnot_count=circuit.cnot_count,
        total_gate_count=circuit.gate_count,
        fitness_history=history,
        converged=history[-1] >= config.target_fidelity,
        target_fidelity=config.target_fidelity,
        wall_time=time.perf_counter() - started,
    )
    if result.converged:
        logger.info(
            "Reached fidelity %.6f >= %.2f after %d generations (%d gates, %d CNOT)",
            result.achieved_fidelity, config.target_fidelity, generation,
            result.total_gate_count, result.cnot_count,
        )
    else:
        logger.warning(
            "Stopped at fidelity %.6f below target %.2f after %d generations",
            result.achieved_fidelity, config.target_fidelity, generation,
        )
    return result
