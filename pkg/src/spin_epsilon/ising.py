"""Exact single-step spin statistics of the infinite 1D Ising chain.

Nearest-neighbour couplings J, external field B, temperature T with k_B = 1,
spins +1/-1.  Everything follows from the symmetric 2x2 transfer matrix

    V[x, x'] = exp(beta * (J*s(x)*s(x') + B*(s(x) + s(x'))/2)),

where s(0) = +1 and s(1) = -1 (the field split evenly between the two sites
of a bond keeps V symmetric).  With leading eigenvalue lam and strictly
positive Perron eigenvector v, the probability that a spin following a spin
in state s(i) is in state s(j) is

    t[i, j] = V[i, j] * v[j] / (lam * v[i]),

and the stationary weight of either spin state is p[i] = v[i]**2 / sum(v**2).

All functions here are pure functions of value inputs and safe to call from
any number of concurrent workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["IsingParams", "TransitionMatrix", "transition_matrix"]


@dataclass(frozen=True)
class IsingParams:
    """Physical parameters (J, B, T) of one spin-chain instance.

    ``T`` must be strictly positive.  ``T = math.inf`` is accepted as an
    explicit infinite-temperature limit flag (``beta == 0``, all couplings
    washed out); T <= 0 is rejected.
    """

    J: float
    B: float
    T: float

    def __post_init__(self):
        object.__setattr__(self, "J", float(self.J))
        object.__setattr__(self, "B", float(self.B))
        object.__setattr__(self, "T", float(self.T))
        if not (math.isfinite(self.J) and math.isfinite(self.B)):
            raise ValueError(f"J and B must be finite, got J={self.J}, B={self.B}")
        if math.isnan(self.T):
            raise ValueError("T must not be NaN")
        if self.T <= 0:
            raise ValueError(f"T must be strictly positive, got T={self.T}")

    @property
    def beta(self) -> float:
        """Inverse temperature 1/T (exactly 0.0 for the T = inf flag)."""
        return 0.0 if math.isinf(self.T) else 1.0 / self.T

    @property
    def infinite_temperature(self) -> bool:
        return math.isinf(self.T)


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Row-stochastic single-step spin statistics plus stationary weights.

    ``t[i, j]`` is the probability that the spin following a spin in state
    (-1)**i is in state (-1)**j; ``p`` is the left fixed point of ``t``
    (p @ t == p, p.sum() == 1).  Entries are strictly inside (0, 1) for any
    finite positive temperature.
    """

    t: np.ndarray
    p: np.ndarray


def transition_matrix(params: IsingParams) -> TransitionMatrix:
    """Conditional spin probabilities and stationary weights from (J, B, T).

    The 2x2 symmetric transfer matrix is diagonalized by the closed
    quadratic formula (no iterative solver), with the Perron eigenvector
    written in a cancellation-free form so the construction stays exact in
    the deterministic and infinite-temperature limits.
    """
    beta = params.beta
    e00 = beta * (params.J + params.B)
    e11 = beta * (params.J - params.B)
    e01 = -beta * params.J
    shift = max(e00, e11, e01)  # scale cancels in t and p
    a = math.exp(e00 - shift)
    d = math.exp(e11 - shift)
    c = math.exp(e01 - shift)
    if c == 0.0:
        raise ValueError(
            "transfer matrix underflows double precision for these parameters "
            f"(J={params.J}, B={params.B}, T={params.T})"
        )

    half_gap = 0.5 * (a - d)
    h = math.hypot(half_gap, c)
    lam = 0.5 * (a + d) + h
    # Perron eigenvector, largest component normalized to 1.  The small
    # component is lam - a (or lam - d) rewritten as c**2 / (h + |half_gap|)
    # to avoid catastrophic cancellation at low temperature.
    if half_gap >= 0.0:
        v = np.array([1.0, c / (h + half_gap)])
    else:
        v = np.array([c / (h - half_gap), 1.0])

    t = np.array(
        [
            [a * v[0] / (lam * v[0]), c * v[1] / (lam * v[0])],
            [c * v[0] / (lam * v[1]), d * v[1] / (lam * v[1])],
        ]
    )
    weights = v * v
    p = weights / weights.sum()
    return TransitionMatrix(t=t, p=p)
