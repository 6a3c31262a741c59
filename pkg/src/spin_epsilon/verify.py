"""Aggregated self-verification: every cross-route consistency check.

Four check families, each pitting an independent computation route against
the primary one:

* oracle convergence -- brute-force ring conditionals against transfer-matrix
  tables, plus the ring's Markov-gap decay;
* fidelity saturation -- memory-state overlaps against exact classical
  fidelities over random parameter draws;
* circuit agreement -- exact circuit output distributions and memory
  synchronization against the unifilar tables;
* entropy monotonicity -- closed-form mixture eigenvalues against a direct
  eigensolve, and entropy strictly decreasing in overlap.

Checks run sequentially so reports are deterministic for a given seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import assert_synchronization, build_step_unitaries, exact_output_distribution
from .classical import future_distribution
from .ising import IsingParams, transition_matrix
from .quantum import (
    build_quantum_model,
    fidelity_saturation_check,
    mixture_eigenvalues,
)
from .ring import conditional_from_ring, enumerate_ring, markov_gap

__all__ = ["CheckResult", "draw_params", "run_verification", "VERIFY_LEVELS"]

VERIFY_LEVELS = ("quick", "full")

# Parameter box for random draws: couplings/fields in [-3, 3], temperatures
# log-uniform over [0.05, 100].
_J_RANGE = (-3.0, 3.0)
_B_RANGE = (-3.0, 3.0)
_T_RANGE = (0.05, 100.0)

# Convergence reference points: short correlation length (tight quantitative
# bounds apply) and long correlation length (decay is checked qualitatively).
_SHORT_CORR = (1.0, 0.3, 2.0)
_LONG_CORR = (1.0, 0.0, 1.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def __str__(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def draw_params(rng: np.random.Generator) -> IsingParams:
    """One random parameter point from the verification box."""
    return IsingParams(
        J=rng.uniform(*_J_RANGE),
        B=rng.uniform(*_B_RANGE),
        T=float(np.exp(rng.uniform(np.log(_T_RANGE[0]), np.log(_T_RANGE[1])))),
    )


def _table_errors(J, B, T, n_halves, length):
    """Max-entry distance between ring conditionals and unifilar tables."""
    params = IsingParams(J, B, T)
    tm = transition_matrix(params)
    errors = []
    for n_half in n_halves:
        ens = enumerate_ring(params, n_half)
        worst = 0.0
        for condition, start in ((1, 0), (-1, 1)):
            ring_table = conditional_from_ring(ens, condition, length)
            exact = future_distribution(tm, start, length)
            worst = max(worst, float(np.max(np.abs(ring_table.probs - exact.probs))))
        errors.append(worst)
    return errors


def check_oracle_convergence(level: str = "quick") -> CheckResult:
    """Ring-enumeration tables must converge on the transfer-matrix route."""
    n_halves = (3, 4, 5, 6) if level == "quick" else (4, 6, 8, 10)
    length = 3
    failures = []
    details = []

    for label, (J, B, T) in (("short-corr", _SHORT_CORR), ("long-corr", _LONG_CORR)):
        errors = _table_errors(J, B, T, n_halves, length)
        details.append(f"{label} table errors {['%.3g' % e for e in errors]}")
        if not all(e2 < e1 for e1, e2 in zip(errors, errors[1:])):
            failures.append(
                f"{label} (J={J}, B={B}, T={T}): table error not strictly "
                f"decreasing across n_half={n_halves}: {errors}"
            )

    if level == "full":
        J, B, T = _SHORT_CORR
        final = _table_errors(J, B, T, (10,), length)[0]
        if final >= 1e-6:
            failures.append(
                f"short-corr table error at n_half=10 is {final:.3g}, expected < 1e-6"
            )
        gaps = [
            markov_gap(enumerate_ring(IsingParams(J, B, T), n), length)
            for n in n_halves
        ]
        details.append(f"short-corr markov gaps {['%.3g' % g for g in gaps]}")
        if not all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:])):
            failures.append(f"markov gap not strictly decreasing: {gaps}")
        if gaps[-1] >= 1e-5:
            failures.append(
                f"markov gap at n_half=10 is {gaps[-1]:.3g}, expected < 1e-5"
            )

    if failures:
        return CheckResult("oracle-convergence", False, failures[0])
    return CheckResult("oracle-convergence", True, "; ".join(details))


def check_fidelity_saturation(
    seed: int, draws: int, max_length: int = 12, model_builder=build_quantum_model
) -> CheckResult:
    """Overlap must equal the classical fidelity bound on every random draw."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        params = draw_params(rng)
        tm = transition_matrix(params)
        report = fidelity_saturation_check(tm, model_builder(tm), max_length)
        worst = max(worst, report.max_gap)
        if not report.passed:
            return CheckResult(
                "fidelity-saturation",
                False,
                f"first counterexample at (J={params.J}, B={params.B}, "
                f"T={params.T}): {report}",
            )
    return CheckResult(
        "fidelity-saturation",
        True,
        f"{draws} draws, max |overlap - fidelity| = {worst:.3g}",
    )


def check_circuit_agreement(
    seed: int, draws: int, length: int, sync_draws: int, sync_depth: int
) -> CheckResult:
    """Circuit output must match the unifilar tables; memories must resync."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        params = draw_params(rng)
        tm = transition_matrix(params)
        su = build_step_unitaries(build_quantum_model(tm))
        for start in (0, 1):
            delta = float(
                np.max(
                    np.abs(
                        exact_output_distribution(su, start, length).probs
                        - future_distribution(tm, start, length).probs
                    )
                )
            )
            worst = max(worst, delta)
            if delta > 1e-12:
                return CheckResult(
                    "circuit-agreement",
                    False,
                    f"first counterexample at (J={params.J}, B={params.B}, "
                    f"T={params.T}), start={start}: max entry gap {delta:.3g}",
                )
    for _ in range(sync_draws):
        params = draw_params(rng)
        tm = transition_matrix(params)
        model = build_quantum_model(tm)
        report = assert_synchronization(build_step_unitaries(model), model, sync_depth)
        if not report.passed:
            return CheckResult(
                "circuit-agreement",
                False,
                f"first counterexample at (J={params.J}, B={params.B}, "
                f"T={params.T}): {report}",
            )
    return CheckResult(
        "circuit-agreement",
        True,
        f"{draws} distribution draws at L={length} (max gap {worst:.3g}), "
        f"{sync_draws} synchronization draws at depth {sync_depth}",
    )


def check_entropy_monotonicity(grid_points: int = 50) -> CheckResult:
    """Mixture entropy must fall strictly with overlap; eigenroutes must agree."""
    weights = np.linspace(0.0, 1.0, grid_points + 2)[1:-1]
    overlaps = np.linspace(0.0, 1.0, grid_points + 2)[1:-1]
    worst_eig = 0.0
    for w in weights:
        previous = None
        for f in overlaps:
            lo, hi = mixture_eigenvalues(w, f)
            states = np.array([[1.0, 0.0], [f, np.sqrt(1.0 - f * f)]])
            rho = w * np.outer(states[0], states[0]) + (1 - w) * np.outer(
                states[1], states[1]
            )
            direct = np.linalg.eigvalsh(rho)
            worst_eig = max(
                worst_eig, float(np.max(np.abs(np.sort([lo, hi]) - direct)))
            )
            if worst_eig > 1e-12:
                return CheckResult(
                    "entropy-monotonicity",
                    False,
                    f"first counterexample at (weight={w}, overlap={f}): "
                    f"closed-form vs eigensolve gap {worst_eig:.3g}",
                )
            entropy = float(-(np.array([lo, hi]) * np.log2([max(lo, 1e-300), hi])).sum())
            if previous is not None and not entropy < previous:
                return CheckResult(
                    "entropy-monotonicity",
                    False,
                    f"first counterexample at (weight={w}, overlap={f}): "
                    f"entropy {entropy!r} did not decrease from {previous!r}",
                )
            previous = entropy
    return CheckResult(
        "entropy-monotonicity",
        True,
        f"{grid_points}x{grid_points} grid, max eigenvalue gap {worst_eig:.3g}",
    )


def run_verification(level: str = "quick", seed: int = 0) -> list[CheckResult]:
    """Run every check family at the requested tier.

    ``quick`` caps rings at n_half = 6 and random sweeps at 50 draws; ``full``
    uses the complete budgets.
    """
    if level not in VERIFY_LEVELS:
        raise ValueError(f"level must be one of {VERIFY_LEVELS}, got {level!r}")
    if level == "quick":
        return [
            check_oracle_convergence("quick"),
            check_fidelity_saturation(seed, draws=50, max_length=8),
            check_circuit_agreement(seed, draws=50, length=6, sync_draws=50, sync_depth=4),
            check_entropy_monotonicity(grid_points=20),
        ]
    return [
        check_oracle_convergence("full"),
        check_fidelity_saturation(seed, draws=500, max_length=12),
        check_circuit_agreement(seed, draws=100, length=10, sync_draws=200, sync_depth=6),
        check_entropy_monotonicity(grid_points=50),
    ]
