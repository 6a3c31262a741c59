"""Exact probability tables over length-L strings of +1/-1 symbols."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

__all__ = ["FutureDistribution", "entropy_bits", "symbols_to_line", "format_float"]

# Symbol convention used throughout the package: index 0 <-> spin +1 <-> '+',
# index 1 <-> spin -1 <-> '-'.
SYMBOL_CHARS = "+-"


def format_float(x: float) -> str:
    """17-significant-digit decimal rendering (round-trips float64 exactly)."""
    return f"{x:.17g}"


def entropy_bits(weights) -> float:
    """Shannon entropy in bits with the 0*log(0) = 0 convention.

    Tiny negative round-off in eigenvalue input is clipped to zero.
    """
    w = np.clip(np.asarray(weights, dtype=float), 0.0, 1.0)
    nz = w[w > 0.0]
    return float(-np.sum(nz * np.log2(nz))) + 0.0  # avoid -0.0 for pure cases


def symbols_to_line(symbols) -> str:
    """Render a +1/-1 symbol sequence as one plain text line."""
    return " ".join("+1" if s > 0 else "-1" for s in symbols)


@dataclass(frozen=True, eq=False)
class FutureDistribution:
    """Probability table over the 2**length strings of +1/-1 symbols.

    Table index encodes the string most-significant-bit first: bit k of the
    index (counting down from the top) is the symbol index of step k+1, so
    index 0 is the all-(+1) string and index 2**length - 1 is all-(-1).
    """

    length: int
    probs: np.ndarray

    def __post_init__(self):
        if self.probs.shape != (2**self.length,):
            raise ValueError(
                f"expected {2**self.length} entries for length {self.length}, "
                f"got shape {self.probs.shape}"
            )

    def string(self, index: int) -> str:
        """Render table index as a symbol string such as '+-+'."""
        bits = format(index, f"0{self.length}b")
        return "".join(SYMBOL_CHARS[int(b)] for b in bits)

    def index(self, string: str) -> int:
        """Inverse of :meth:`string`."""
        if len(string) != self.length:
            raise ValueError(f"expected a length-{self.length} string")
        idx = 0
        for ch in string:
            idx = (idx << 1) | SYMBOL_CHARS.index(ch)
        return idx

    def marginalize_last(self) -> "FutureDistribution":
        """Sum out the final symbol, giving the length-(L-1) table."""
        if self.length < 2:
            raise ValueError("nothing left to marginalize below length 2")
        return FutureDistribution(self.length - 1, self.probs.reshape(-1, 2).sum(axis=1))

    def to_csv(self) -> str:
        """CSV dump with header ``string,probability``."""
        out = io.StringIO()
        out.write("string,probability\n")
        for i, prob in enumerate(self.probs):
            out.write(f"{self.string(i)},{format_float(float(prob))}\n")
        return out.getvalue()
