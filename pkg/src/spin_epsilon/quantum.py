"""Optimal quantum memory for the chain and its von Neumann complexity.

The quantum model keeps one qubit whose two memory states carry the square
roots of the transition probabilities,

    |s_i> = sqrt(t[i,0]) |0> + sqrt(t[i,1]) |1>,

so their overlap <s0|s1> = sqrt(t00*t10) + sqrt(t01*t11) equals the fidelity
between the two classical conditional futures -- the largest overlap any
valid model can afford.  The stationary memory state is the p-weighted
mixture of the two, and its entropy in bits is the quantum statistical
complexity.

Amplitudes are fixed real non-negative: the optimal models form a unitary
family and entropy is gauge-invariant, so one canonical representative
suffices.  All operations are pure value computations.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .classical import classical_fidelity
from .distribution import entropy_bits
from .ising import IsingParams, TransitionMatrix, transition_matrix

__all__ = [
    "QuantumModel",
    "build_quantum_model",
    "stationary_density",
    "quantum_statistical_complexity",
    "mixture_eigenvalues",
    "SaturationReport",
    "fidelity_saturation_check",
    "TmaxResult",
    "find_tmax",
]


@dataclass(frozen=True, eq=False)
class QuantumModel:
    """Two unit-norm real amplitude vectors plus their stationary weights.

    ``amp[i]`` holds the memory state assigned to causal state i.
    """

    amp: np.ndarray
    weights: np.ndarray

    def overlap(self) -> float:
        """Inner product <s0|s1> of the two memory states."""
        return float(self.amp[0] @ self.amp[1])


def build_quantum_model(tm: TransitionMatrix) -> QuantumModel:
    """Memory states with amplitudes sqrt(t[i, j]), weighted by ``tm.p``."""
    return QuantumModel(amp=np.sqrt(tm.t), weights=tm.p.copy())


def stationary_density(model: QuantumModel) -> np.ndarray:
    """Stationary memory state: weighted sum of the two pure projectors.

    Returns a real symmetric 2x2 matrix with unit trace and eigenvalues in
    [0, 1].
    """
    rho = np.zeros((2, 2))
    for w, vec in zip(model.weights, model.amp):
        rho += w * np.outer(vec, vec)
    return rho


def quantum_statistical_complexity(model: QuantumModel) -> float:
    """Von Neumann entropy (bits) of the stationary memory state."""
    eigenvalues = np.linalg.eigvalsh(stationary_density(model))
    return entropy_bits(eigenvalues)


def mixture_eigenvalues(weight: float, overlap: float) -> tuple[float, float]:
    """Closed-form eigenvalues of w|a><a| + (1-w)|b><b| with <a|b> = overlap.

    Returns (smaller, larger) = (1 -+ sqrt(1 - 4*w*(1-w)*(1-overlap**2))) / 2.
    """
    disc = 1.0 - 4.0 * weight * (1.0 - weight) * (1.0 - overlap * overlap)
    root = np.sqrt(max(disc, 0.0))
    return 0.5 * (1.0 - root), 0.5 * (1.0 + root)


@dataclass(frozen=True)
class SaturationReport:
    """Outcome of checking the overlap against the classical fidelity bound."""

    overlap: float
    fidelities: tuple[float, ...]
    max_gap: float
    passed: bool

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}: overlap={self.overlap:.15g}, "
            f"max |overlap - fidelity(L)| = {self.max_gap:.3g} "
            f"over L=1..{len(self.fidelities)}"
        )


def fidelity_saturation_check(
    tm: TransitionMatrix,
    model: QuantumModel,
    max_length: int = 12,
    tol: float = 1e-10,
) -> SaturationReport:
    """Verify the memory-state overlap sits exactly on the classical bound.

    The overlap of any valid pair of memory states can never exceed the
    fidelity of the conditional futures they stand for; the optimal model
    meets it with equality.  PASS requires, for every L = 1..max_length,
    overlap <= fidelity(L) + tol and |overlap - fidelity(L)| <= tol.
    A FAIL signals a construction bug, not a physics surprise.
    """
    overlap = model.overlap()
    fidelities = tuple(classical_fidelity(tm, n) for n in range(1, max_length + 1))
    max_gap = max(abs(overlap - f) for f in fidelities)
    bound_ok = all(overlap <= f + tol for f in fidelities)
    return SaturationReport(
        overlap=overlap,
        fidelities=fidelities,
        max_gap=max_gap,
        passed=bound_ok and max_gap <= tol,
    )


def _complexity_at(J: float, B: float, T: float) -> float:
    return quantum_statistical_complexity(
        build_quantum_model(transition_matrix(IsingParams(J, B, T)))
    )


@dataclass(frozen=True)
class TmaxResult:
    """Location and value of the quantum-complexity maximum over T."""

    temperature: float
    cq: float
    boundary: bool  # argmax sat on a range endpoint; nothing interior found
    unimodal: bool  # coarse grid showed a single rise-then-fall profile

    def __iter__(self):
        return iter((self.temperature, self.cq))


_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def find_tmax(
    J: float,
    B: float,
    t_range: tuple[float, float] = (0.05, 100.0),
    tol: float = 1e-4,
    grid_points: int = 101,
) -> TmaxResult:
    """Temperature maximizing the quantum statistical complexity.

    Coarse log-spaced grid scan (``grid_points`` points) followed by
    golden-section refinement of the bracketing interval down to width
    ``tol``.  A maximum on a range endpoint is reported as a boundary result
    rather than an error; a non-unimodal grid profile downgrades to the grid
    argmax with a warning.
    """
    lo, hi = t_range
    if not (0.0 < lo < hi):
        raise ValueError(f"t_range must satisfy 0 < lo < hi, got {t_range}")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    grid = np.logspace(np.log10(lo), np.log10(hi), grid_points)
    values = np.array([_complexity_at(J, B, T) for T in grid])
    k = int(np.argmax(values))

    diffs = np.diff(values)
    moves = diffs[np.abs(diffs) > 0.0]
    falls_then_rise = np.any(np.diff(np.sign(moves)) > 0) if moves.size else False
    unimodal = not falls_then_rise

    if k == 0 or k == grid_points - 1:
        return TmaxResult(float(grid[k]), float(values[k]), boundary=True, unimodal=unimodal)
    if not unimodal:
        warnings.warn(
            "quantum complexity profile is not unimodal on the coarse grid; "
            "returning the grid argmax without refinement",
            stacklevel=2,
        )
        return TmaxResult(float(grid[k]), float(values[k]), boundary=False, unimodal=False)

    a, b = float(grid[k - 1]), float(grid[k + 1])
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = _complexity_at(J, B, x1), _complexity_at(J, B, x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = _complexity_at(J, B, x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = _complexity_at(J, B, x1)
    t_best = 0.5 * (a + b)
    cq_best = _complexity_at(J, B, t_best)
    if cq_best < values[k]:  # never report worse than the scan
        t_best, cq_best = float(grid[k]), float(values[k])
    return TmaxResult(t_best, cq_best, boundary=False, unimodal=True)
