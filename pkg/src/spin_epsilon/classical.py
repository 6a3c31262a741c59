"""Two-state epsilon-machine over the chain's conditional spin statistics.

The machine's causal states are the two classes of pasts distinguished only
by the last observed symbol: state 0 after a +1, state 1 after a -1.  The
dynamics are unifilar by construction (emitting symbol j forces a transition
into state j), so exact conditional future tables are plain products of
transition-matrix entries.

The table/entropy/fidelity operations are stateless and thread-safe; an
:class:`EpsilonMachine` instance owns its RNG and is single-owner.
"""

from __future__ import annotations

import numpy as np

from .distribution import FutureDistribution, entropy_bits
from .ising import TransitionMatrix

__all__ = [
    "MERGE_TOL",
    "MAX_TABLE_LENGTH",
    "EpsilonMachine",
    "statistical_complexity",
    "future_distribution",
    "classical_fidelity",
    "sample_trajectory",
]

# Rows of t closer than this are treated as a single causal state (the two
# conditional futures coincide and the machine needs no memory at all).
MERGE_TOL = 1e-12

MAX_TABLE_LENGTH = 20  # 2**20-entry table guard


def statistical_complexity(tm: TransitionMatrix) -> float:
    """Shannon entropy (bits) of the stationary causal-state distribution.

    Returns 0 when the two rows of ``t`` coincide within ``MERGE_TOL``: the
    causal states then have identical conditional futures and merge, which is
    how the infinite-temperature discontinuity shows up.
    """
    if float(np.max(np.abs(tm.t[0] - tm.t[1]))) <= MERGE_TOL:
        return 0.0
    return entropy_bits(tm.p)


def future_distribution(
    tm: TransitionMatrix, start: int, length: int
) -> FutureDistribution:
    """Exact P(x_1 .. x_L | causal state ``start``) as a product of t entries.

    No sampling: the table is built by unifilar expansion, doubling once per
    step, with the first emitted symbol in the most significant index bit.
    """
    if start not in (0, 1):
        raise ValueError(f"start must be 0 or 1, got {start}")
    if not 1 <= length <= MAX_TABLE_LENGTH:
        raise ValueError(
            f"length must be in [1, {MAX_TABLE_LENGTH}], got {length}"
        )
    probs = np.ones(1)
    states = np.array([start])
    for _ in range(length):
        probs = (probs[:, None] * tm.t[states]).reshape(-1)
        states = np.tile(np.array([0, 1]), states.size)
    return FutureDistribution(length, probs)


def classical_fidelity(tm: TransitionMatrix, length: int) -> float:
    """Bhattacharyya fidelity between the two conditional future tables.

    sum over length-L strings of sqrt(P(x|s0) * P(x|s1)).  Telescoping of the
    unifilar chain makes this independent of L, equal to
    sqrt(t00*t10) + sqrt(t01*t11); this function computes the sum from the
    exact tables so that identity stays checkable.
    """
    d0 = future_distribution(tm, 0, length)
    d1 = future_distribution(tm, 1, length)
    return float(np.sum(np.sqrt(d0.probs * d1.probs)))


class EpsilonMachine:
    """Stateful simulator for the two-state unifilar machine.

    Holds the transition matrix, the current causal state and an owned RNG;
    use one instance per worker.  Entropies are reported in bits throughout.
    """

    log_base = "bits"

    def __init__(self, tm: TransitionMatrix, state: int = 0, seed: int | None = None):
        if state not in (0, 1):
            raise ValueError(f"state must be 0 or 1, got {state}")
        self.tm = tm
        self.state = state
        self.rng = np.random.default_rng(seed)

    def reset(self, state: int, seed: int | None = None) -> None:
        if state not in (0, 1):
            raise ValueError(f"state must be 0 or 1, got {state}")
        self.state = state
        self.rng = np.random.default_rng(seed)

    def step(self) -> int:
        """Emit one +1/-1 symbol and move to the matching causal state."""
        j = 0 if self.rng.random() < self.tm.t[self.state, 0] else 1
        self.state = j
        return 1 - 2 * j

    def run(self, steps: int) -> np.ndarray:
        """Emit ``steps`` symbols; returns an int8 array of +1/-1 values."""
        if steps < 0:
            raise ValueError(f"steps must be >= 0, got {steps}")
        draws = self.rng.random(steps)
        out = np.empty(steps, dtype=np.int8)
        t0 = (float(self.tm.t[0, 0]), float(self.tm.t[1, 0]))
        state = self.state
        for k in range(steps):
            state = 0 if draws[k] < t0[state] else 1
            out[k] = state
        self.state = state
        return 1 - 2 * out


def sample_trajectory(
    machine: EpsilonMachine, start: int, steps: int, seed: int
) -> tuple[np.ndarray, int]:
    """Seeded trajectory of +1/-1 symbols; returns (symbols, final state)."""
    machine.reset(start, seed)
    symbols = machine.run(steps)
    return symbols, machine.state
