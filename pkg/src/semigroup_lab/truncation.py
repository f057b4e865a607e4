"""Suprema over modes reported at two truncation levels.

Every sup over n ≤ n_max is also evaluated at n_max // 10. Growth between
the two levels is the observable signature of a divergent supremum.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Any

import numpy as np

from .constants import DIVERGENCE_RATIO, TAIL_DIVISOR

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_POLICY",
    "ModeSup",
    "TruncationPolicy",
    "growth_ratio",
    "mode_sup",
]


@dataclass(frozen=True)
class ModeSup:
    """A supremum over modes with its truncation diagnostics."""

    value: float
    mode: int  # 1-based, smallest index on ties
    n_max: int
    value_tail: float
    n_tail: int
    growth: float
    divergent: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "argmax_mode": self.mode,
            "n_max": self.n_max,
            "value_at_n_tail": self.value_tail,
            "n_tail": self.n_tail,
            "growth": self.growth,
            "divergent": self.divergent,
        }


def growth_ratio(value: float, value_tail: float) -> float:
    """Ratio value / value_tail with 0/0 read as 1."""
    if value_tail > 0:
        return float(value / value_tail)
    return 1.0 if value <= 0 else float("inf")


def mode_sup(
    values: np.ndarray,
    ratio: float = DIVERGENCE_RATIO,
    divisor: int = TAIL_DIVISOR,
) -> ModeSup:
    """Reduce per-mode values to a ModeSup.

    Args:
        values: nonnegative per-mode values, index 0 is mode 1
        ratio: growth above which the sup is flagged divergent
        divisor: the second level is n_max // divisor (at least 1)
    """
    values = np.asarray(values, dtype=float)
    n_max = int(values.size)
    if n_max == 0:
        raise ValueError("no modes to reduce")
    idx = int(np.argmax(values))
    value = float(values[idx])
    n_tail = max(n_max // divisor, 1)
    value_tail = float(values[:n_tail].max())
    growth = growth_ratio(value, value_tail)
    divergent = growth > ratio
    if divergent:
        logger.debug(
            "sup grows from %.6g (n=%s) to %.6g (n=%s)", value_tail, n_tail, value, n_max
        )
    return ModeSup(
        value=value,
        mode=idx + 1,
        n_max=n_max,
        value_tail=value_tail,
        n_tail=n_tail,
        growth=growth,
        divergent=bool(divergent),
    )


@dataclass(frozen=True)
class TruncationPolicy:
    """Divergence ratio and tail divisor applied to every mode sup."""

    ratio: float = DIVERGENCE_RATIO
    divisor: int = TAIL_DIVISOR

    def __post_init__(self) -> None:
        if self.divisor < 2:
            raise ValueError("tail divisor must be >= 2")
        if not self.ratio >= 1:
            raise ValueError("divergence ratio must be >= 1")

    @classmethod
    def from_config(cls, config) -> TruncationPolicy:
        return cls(config.divergence_ratio, config.tail_divisor)

    def reduce(self, values: np.ndarray) -> ModeSup:
        return mode_sup(values, self.ratio, self.divisor)


DEFAULT_POLICY = TruncationPolicy()
