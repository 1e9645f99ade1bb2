"""
Genome encoding of a state-preparation circuit.

A genome is an ordered list of genes over the alphabet {RY, RZ, CNOT};
decoding it yields a GateCircuit with exactly one gate per gene.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ...utils.errors import CircuitError
from ..sim.circuit import GateCircuit, GateInstruction, GateKind

GENE_KINDS = (GateKind.RY, GateKind.RZ, GateKind.CNOT)
TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Map an angle into (-2pi, 2pi]; half-angle rotations have period 4pi."""
    if -TWO_PI < angle <= TWO_PI:
        return angle
    return TWO_PI - float(np.mod(TWO_PI - angle, 2.0 * TWO_PI))


@dataclass(frozen=True)
class Gene:
    kind: GateKind
    target: int
    control: Optional[int] = None
    angle: Optional[float] = None

    def __post_init__(self):
        if self.kind not in GENE_KINDS:
            raise CircuitError(f"{self.kind.value} is not a gene kind")
        if self.kind is GateKind.CNOT:
            if self.control is None or self.control == self.target:
                raise CircuitError("CNOT gene needs a control distinct from its target")
        elif self.control is not None:
            raise CircuitError(f"{self.kind.value} gene takes no control qubit")
        else:
            object.__setattr__(self, "angle", wrap_angle(float(self.angle or 0.0)))

    @property
    def is_rotation(self) -> bool:
        return self.kind is not GateKind.CNOT

    def with_angle(self, angle: float) -> "Gene":
        return Gene(self.kind, self.target, angle=angle)

    def to_instruction(self) -> GateInstruction:
        return GateInstruction(self.kind, self.target, self.control, self.angle)


@dataclass(frozen=True)
class Genome:
    n_qubits: int
    genes: Tuple[Gene, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "genes", tuple(self.genes))

    def __len__(self) -> int:
        return len(self.genes)

    def to_circuit(self) -> GateCircuit:
        return GateCircuit(self.n_qubits, tuple(g.to_instruction() for g in self.genes))

    @property
    def rotation_indices(self) -> List[int]:
        return [i for i, g in enumerate(self.genes) if g.is_rotation]

    def angles(self) -> np.ndarray:
        return np.array([self.genes[i].angle for i in self.rotation_indices], dtype=float)

    def with_angles(self, angles: Sequence[float]) -> "Genome":
        """Same gate structure, rotation angles replaced in order."""
        genes = list(self.genes)
        for index, angle in zip(self.rotation_indices, angles):
            genes[index] = genes[index].with_angle(float(angle))
        return Genome(self.n_qubits, tuple(genes))

    def with_genes(self, genes: Sequence[Gene]) -> "Genome":
        return Genome(self.n_qubits, tuple(genes))


def _kind_probabilities(n_qubits: int, kind_weights: Sequence[float]) -> np.ndarray:
    weights = np.asarray(kind_weights, dtype=float)
    if n_qubits < 2:
        weights = weights.copy()
        weights[2] = 0.0
    if weights.sum() <= 0:
        weights = np.array([1.0, 0.0, 0.0])
    return weights / weights.sum()


def random_gene(n_qubits: int, rng: np.random.Generator, kind_weights: Sequence[float]) -> Gene:
    kind = GENE_KINDS[int(rng.choice(3, p=_kind_probabilities(n_qubits, kind_weights)))]
    target = int(rng.integers(n_qubits))
    if kind is GateKind.CNOT:
        control = int(rng.integers(n_qubits - 1))
        if control >= target:
            control += 1
        return Gene(kind, target, control=control)
    return Gene(kind, target, angle=float(rng.uniform(-math.pi, math.pi)))


def random_genome(
    n_qubits: int,
    rng: np.random.Generator,
    max_length: int,
    kind_weights: Sequence[float],
) -> Genome:
    length = int(rng.integers(1, max_length + 1))
    return Genome(n_qubits, tuple(random_gene(n_qubits, rng, kind_weights) for _ in range(length)))


def identity_genome(n_qubits: int) -> Genome:
    """Single RY(0): the smallest genome acting as the identity."""
    return Genome(n_qubits, (Gene(GateKind.RY, 0, angle=0.0),))


def ladder_genes(n_qubits: int, depth: int) -> int:
    """Gene count of a ladder genome of ``depth`` entangling layers."""
    return n_qubits + depth * (2 * n_qubits - 1)


def ladder_genome(n_qubits: int, depth: int, rng: np.random.Generator) -> Genome:
    """
    RY on every qubit, then ``depth`` times a CNOT chain q -> q+1 followed by
    another RY layer. Angles are uniform in [-pi, pi).
    """
    def ry_layer() -> List[Gene]:
        return [Gene(GateKind.RY, q, angle=float(rng.uniform(-math.pi, math.pi)))
                for q in range(n_qubits)]

    genes = ry_layer()
    if n_qubits > 1:
        for _ in range(depth):
            genes.extend(Gene(GateKind.CNOT, q + 1, control=q) for q in range(n_qubits - 1))
            genes.extend(ry_layer())
    return Genome(n_qubits, tuple(genes))
