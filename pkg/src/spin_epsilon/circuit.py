"""Exact simulation of the one-qubit-memory sampling circuit.

Each step tensors a fresh ancilla qubit prepared in |s0> (rotation V applied
to |0>), applies U to the ancilla controlled on the memory qubit in the
computational basis (|k>|phi> -> |k> U^k |phi>), emits the old memory qubit
and measures it in the Z basis; the collapsed ancilla becomes the new memory.
Measuring each emitted qubit immediately keeps the live state two-dimensional,
and is equivalent to building the full entangled chain and measuring at the
end.

The enumeration walks every measurement branch with exact amplitudes; the
sampler walks a single seeded branch.  All state vectors are real: the
canonical amplitude gauge never produces a complex phase.  Branch enumeration
is read-only over shared inputs; the sampler owns its RNG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .distribution import FutureDistribution
from .quantum import QuantumModel

__all__ = [
    "StepUnitaries",
    "build_step_unitaries",
    "Branch",
    "branch_layers",
    "exact_output_distribution",
    "SyncReport",
    "assert_synchronization",
    "sample_quantum_trajectory",
]

MAX_DEPTH = 20

_KET0 = np.array([1.0, 0.0])


def _rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True, eq=False)
class StepUnitaries:
    """The two rotations driving one circuit step.

    ``v`` maps |0> to the first memory state, ``u`` maps the first memory
    state to the second; ``theta0``/``theta1`` are the state angles with
    |s_i> = (cos theta_i, sin theta_i).
    """

    v: np.ndarray
    u: np.ndarray
    theta0: float
    theta1: float

    def causal_state(self, index: int) -> np.ndarray:
        """Memory state vector |s_index>."""
        if index not in (0, 1):
            raise ValueError(f"index must be 0 or 1, got {index}")
        state = self.v @ _KET0
        return state if index == 0 else self.u @ state


def build_step_unitaries(model: QuantumModel) -> StepUnitaries:
    """Planar rotations realizing the model's two memory states.

    Only the action of U on |s0> is ever used, so the rotation by
    (theta1 - theta0) is a sufficient completion.
    """
    theta0 = math.atan2(model.amp[0, 1], model.amp[0, 0])
    theta1 = math.atan2(model.amp[1, 1], model.amp[1, 0])
    return StepUnitaries(
        v=_rotation(theta0), u=_rotation(theta1 - theta0), theta0=theta0, theta1=theta1
    )


@dataclass(frozen=True, eq=False)
class Branch:
    """One measurement branch: amplitude weight, memory vector, emitted prefix.

    ``weight**2`` is the probability of the emitted prefix, ``history`` packs
    the prefix as an integer (first symbol in the most significant bit).
    The memory register is one qubit by construction; the shape check keeps
    that structural.
    """

    weight: float
    memory: np.ndarray
    history: int

    def __post_init__(self):
        if self.memory.shape != (2,):
            raise ValueError("memory register must stay a single qubit")


def _advance(su: StepUnitaries, memory: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One circuit pass: exact joint amplitudes over (emitted qubit, ancilla).

    Row k of the returned joint is the ancilla amplitude vector paired with
    emitted-qubit outcome k; outcome probabilities are the squared row norms.
    """
    ancilla = su.v @ _KET0
    joint = np.empty((2, 2))
    joint[0] = memory[0] * ancilla
    joint[1] = memory[1] * (su.u @ ancilla)
    probs = np.sum(joint * joint, axis=1)
    return probs, joint


def branch_layers(
    su: StepUnitaries, start: int, length: int
) -> Iterator[list[Branch]]:
    """Yield the full branch list after each of ``length`` measured steps.

    Squared branch weights sum to one at every depth (checked); zero-weight
    outcomes are dropped.
    """
    layer = [Branch(1.0, su.causal_state(start), 0)]
    for depth in range(length):
        nxt = []
        for br in layer:
            probs, joint = _advance(su, br.memory)
            for outcome in (0, 1):
                if probs[outcome] == 0.0:
                    continue
                root = math.sqrt(probs[outcome])
                nxt.append(
                    Branch(
                        weight=br.weight * root,
                        memory=joint[outcome] / root,
                        history=(br.history << 1) | outcome,
                    )
                )
        total = math.fsum(br.weight**2 for br in nxt)
        if abs(total - 1.0) > 1e-12:
            raise RuntimeError(
                f"branch weights lost normalization at depth {depth + 1}: "
                f"sum of squares = {total!r}"
            )
        layer = nxt
        yield layer


def exact_output_distribution(
    su: StepUnitaries, start: int, length: int
) -> FutureDistribution:
    """Exact Born-rule distribution over the 2**length measurement records."""
    if not 1 <= length <= MAX_DEPTH:
        raise ValueError(f"length must be in [1, {MAX_DEPTH}], got {length}")
    probs = np.zeros(2**length)
    layer: list[Branch] = []
    for layer in branch_layers(su, start, length):
        pass  # only the deepest layer carries the full records
    for br in layer:
        probs[br.history] = br.weight**2
    return FutureDistribution(length, probs)


@dataclass(frozen=True)
class SyncReport:
    """Outcome of checking post-measurement memories against the encoding."""

    passed: bool
    max_deviation: float
    first_failure: tuple[int, str] | None

    def __str__(self):
        if self.passed:
            return f"PASS: max synchronization deviation {self.max_deviation:.3g}"
        depth, prefix = self.first_failure
        return (
            f"FAIL: memory desynchronized at depth {depth} after '{prefix}' "
            f"(deviation {self.max_deviation:.3g})"
        )


def assert_synchronization(
    su: StepUnitaries, model: QuantumModel, length: int, tol: float = 1e-12
) -> SyncReport:
    """Check every branch's memory equals the emitted symbol's memory state.

    Comparison is up to global sign via | |<memory|s_j>| - 1 | <= tol, for
    every branch at every depth up to ``length``.
    """
    if not 1 <= length <= MAX_DEPTH:
        raise ValueError(f"length must be in [1, {MAX_DEPTH}], got {length}")
    worst = 0.0
    first = None
    for start in (0, 1):
        for depth, layer in enumerate(branch_layers(su, start, length), start=1):
            for br in layer:
                emitted = br.history & 1
                deviation = abs(abs(float(br.memory @ model.amp[emitted])) - 1.0)
                if deviation > worst:
                    worst = deviation
                if deviation > tol and first is None:
                    prefix = format(br.history, f"0{depth}b")
                    prefix = prefix.replace("0", "+").replace("1", "-")
                    first = (depth, prefix)
    return SyncReport(passed=first is None, max_deviation=worst, first_failure=first)


def sample_quantum_trajectory(
    su: StepUnitaries, start: int, steps: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Walk one seeded branch; returns (+1/-1 symbols, final memory vector).

    Each measurement outcome is drawn from its exact branch probability
    (the squared computational-basis weights of the current memory), and the
    ancilla collapses to the emitted symbol's memory state.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    states = (su.causal_state(0), su.causal_state(1))
    m0 = float(states[start][0])
    draws = np.random.default_rng(seed).random(steps)
    out = np.empty(steps, dtype=np.int8)
    memory = states[start]
    for k in range(steps):
        outcome = 0 if draws[k] < m0 * m0 else 1
        memory = states[outcome]
        m0 = float(memory[0])
        out[k] = outcome
    return 1 - 2 * out, memory
