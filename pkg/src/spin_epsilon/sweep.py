"""Parameter sweeps over temperature with CSV/JSON serialization.

Each row is a pure function of (J, B, T) alone, so sweeps are reproducible
byte-for-byte.  Points are computed by a thread pool (capped by the
SPIN_EPSILON_THREADS environment variable) and assembled in grid order
regardless of completion order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classical import statistical_complexity
from .distribution import format_float
from .ising import IsingParams, transition_matrix
from .quantum import build_quantum_model, quantum_statistical_complexity

__all__ = [
    "CSV_HEADER",
    "RATIO_FLOOR",
    "SweepRow",
    "compute_row",
    "temperature_grid",
    "run_sweep",
    "rows_to_csv",
    "rows_to_json",
]

CSV_HEADER = "T,J,B,p0,p1,T00,T01,T10,T11,fidelity,C_mu_bits,C_q_bits,ratio"

# Below this quantum complexity the efficiency ratio is left blank.
RATIO_FLOOR = 1e-12


@dataclass(frozen=True)
class SweepRow:
    """One sweep point: parameters, single-step statistics, complexities."""

    T: float
    J: float
    B: float
    p0: float
    p1: float
    t00: float
    t01: float
    t10: float
    t11: float
    fidelity: float
    c_mu_bits: float
    c_q_bits: float
    ratio: float | None

    def csv_line(self) -> str:
        cells = [
            format_float(x)
            for x in (
                self.T,
                self.J,
                self.B,
                self.p0,
                self.p1,
                self.t00,
                self.t01,
                self.t10,
                self.t11,
                self.fidelity,
                self.c_mu_bits,
                self.c_q_bits,
            )
        ]
        cells.append("" if self.ratio is None else format_float(self.ratio))
        return ",".join(cells)

    def as_dict(self) -> dict:
        return {
            "T": self.T,
            "J": self.J,
            "B": self.B,
            "p0": self.p0,
            "p1": self.p1,
            "T00": self.t00,
            "T01": self.t01,
            "T10": self.t10,
            "T11": self.t11,
            "fidelity": self.fidelity,
            "C_mu_bits": self.c_mu_bits,
            "C_q_bits": self.c_q_bits,
            "ratio": self.ratio,
        }


def compute_row(J: float, B: float, T: float) -> SweepRow:
    """Evaluate one sweep point from scratch (no hidden state).

    Aborts with a diagnostic if the quantum complexity ever exceeds the
    classical one beyond round-off: that would mean a construction bug.
    """
    tm = transition_matrix(IsingParams(J, B, T))
    model = build_quantum_model(tm)
    c_mu = statistical_complexity(tm)
    c_q = quantum_statistical_complexity(model)
    if c_q > c_mu + 1e-10:
        raise RuntimeError(
            f"invariant violated at (J={J}, B={B}, T={T}): "
            f"C_q={c_q!r} exceeds C_mu={c_mu!r}"
        )
    return SweepRow(
        T=T,
        J=J,
        B=B,
        p0=float(tm.p[0]),
        p1=float(tm.p[1]),
        t00=float(tm.t[0, 0]),
        t01=float(tm.t[0, 1]),
        t10=float(tm.t[1, 0]),
        t11=float(tm.t[1, 1]),
        fidelity=model.overlap(),
        c_mu_bits=c_mu,
        c_q_bits=c_q,
        ratio=(c_mu / c_q) if c_q >= RATIO_FLOOR else None,
    )


def temperature_grid(
    t_min: float, t_max: float, points: int, spacing: str = "log"
) -> np.ndarray:
    """Deterministic temperature grid, linear or log spaced."""
    if t_min <= 0 or t_max <= t_min:
        raise ValueError(f"need 0 < t_min < t_max, got [{t_min}, {t_max}]")
    if points < 2:
        raise ValueError(f"points must be >= 2, got {points}")
    if spacing == "log":
        return np.logspace(np.log10(t_min), np.log10(t_max), points)
    if spacing == "linear":
        return np.linspace(t_min, t_max, points)
    raise ValueError(f"spacing must be 'linear' or 'log', got {spacing!r}")


def _worker_count(n_tasks: int) -> int:
    cap = os.environ.get("SPIN_EPSILON_THREADS")
    workers = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(workers, n_tasks))


def run_sweep(J: float, B: float, grid) -> list[SweepRow]:
    """Compute every grid point; output order follows the grid."""
    temperatures = [float(t) for t in grid]
    if not temperatures:
        return []
    with ThreadPoolExecutor(max_workers=_worker_count(len(temperatures))) as pool:
        return list(pool.map(lambda t: compute_row(J, B, t), temperatures))


def rows_to_csv(rows: list[SweepRow]) -> str:
    return "\n".join([CSV_HEADER] + [row.csv_line() for row in rows]) + "\n"


def rows_to_json(rows: list[SweepRow]) -> list[dict]:
    return [row.as_dict() for row in rows]
