"""Carleson-box estimates for column families over a diagonal spectrum.

A box Q(h, ω) = {0 ≤ Re z ≤ h, |Im z − ω| ≤ h} collects the modes whose
reflections −λ_n fall inside it. The box norm is the top eigenvalue of the
weighted Gram matrix of the member columns, and the Carleson ratio is that
norm divided by h.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
import logging
from pathlib import Path
from typing import Any

import numpy as np
from scipy import linalg

from .constants import (
    CARLESON_DENSE_LIMIT,
    CARLESON_LEVELS,
    DEFAULT_SEED,
    POWER_ITERATION_MAX_ITER,
    POWER_ITERATION_TOL,
)
from .errors import DomainError, SpectrumError
from .spectra import Spectrum, read_document
from .truncation import DEFAULT_POLICY, TruncationPolicy, growth_ratio
from .validation_utils import validate_columns_document

logger = logging.getLogger(__name__)

__all__ = [
    "CarlesonBox",
    "CarlesonReport",
    "ColumnFamily",
    "anchored_boxes",
    "box_members",
    "box_norm",
    "carleson_constant",
    "load_columns",
    "power_iteration",
]


@dataclass(frozen=True)
class CarlesonBox:
    h: float
    omega: float

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise DomainError(f"box size must be positive (got {self.h})")

    def to_dict(self) -> dict[str, float]:
        return {"h": self.h, "omega": self.omega}


@dataclass(frozen=True, eq=False)
class ColumnFamily:
    """Columns c_n, either dense rows of an (n_modes, dim) array or s_n e_n."""

    dense: np.ndarray | None = None
    scales: np.ndarray | None = None

    def __post_init__(self) -> None:
        if (self.dense is None) == (self.scales is None):
            raise DomainError("give exactly one of dense columns or diagonal scales")
        if self.dense is not None:
            dense = np.atleast_2d(np.asarray(self.dense, dtype=complex))
            object.__setattr__(self, "dense", dense)
        else:
            object.__setattr__(self, "scales", np.asarray(self.scales, dtype=float))

    @classmethod
    def diagonal(cls, spec: Spectrum, exponent: float) -> ColumnFamily:
        """c_n = |λ_n|^{−exponent} e_n."""
        return cls(scales=np.abs(spec.modes) ** (-exponent))

    @property
    def is_diagonal(self) -> bool:
        return self.scales is not None

    @property
    def n_modes(self) -> int:
        return int(self.scales.size if self.is_diagonal else self.dense.shape[0])

    def truncate(self, n: int) -> ColumnFamily:
        if self.is_diagonal:
            return ColumnFamily(scales=self.scales[:n])
        return ColumnFamily(dense=self.dense[:n])


def load_columns(document: Mapping | str | Path, spec: Spectrum) -> ColumnFamily:
    """Read `columns: [[...], ...]` (entries real or [re, im]) for spec."""
    doc = read_document(document, kind="columns")
    errors = validate_columns_document(doc, spec.n_max)
    if errors:
        raise SpectrumError("; ".join(errors))

    def entry(v: Any) -> complex:
        return complex(v[0], v[1]) if isinstance(v, list | tuple) else complex(v)

    dense = np.array([[entry(v) for v in col] for col in doc["columns"]])
    return ColumnFamily(dense=dense)


class _BoxIndex:
    """Modes sorted by Im(−λ_n) for range queries."""

    def __init__(self, spec: Spectrum):
        self.key = -spec.frequencies
        self.order = np.argsort(self.key, kind="stable")
        self.sorted_key = self.key[self.order]
        self.rates = spec.decay_rates

    def members(self, box: CarlesonBox) -> np.ndarray:
        lo = np.searchsorted(self.sorted_key, box.omega - box.h, side="left")
        hi = np.searchsorted(self.sorted_key, box.omega + box.h, side="right")
        candidates = self.order[lo:hi]
        inside = self.rates[candidates] <= box.h
        return np.sort(candidates[inside]) + 1


def box_members(spec: Spectrum, box: CarlesonBox) -> np.ndarray:
    """1-based n with 0 ≤ −Re λ_n ≤ h and |−Im λ_n − ω| ≤ h."""
    return _BoxIndex(spec).members(box)


def power_iteration(
    matvec: Callable[[np.ndarray], np.ndarray],
    size: int,
    rng: np.random.Generator,
    tol: float = POWER_ITERATION_TOL,
    max_iter: int = POWER_ITERATION_MAX_ITER,
) -> float:
    """Top eigenvalue of a Hermitian PSD operator given by matvec.

    Stops when the residual ‖Gx − λx‖ falls below tol·λ.
    """
    x = rng.normal(size=size) + 0j
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = matvec(x)
        y_norm = np.linalg.norm(y)
        if y_norm == 0:
            x = rng.normal(size=size) + 0j
            x /= np.linalg.norm(x)
            continue
        lam = float(np.real(np.vdot(x, y)))
        if np.linalg.norm(y - lam * x) <= tol * max(lam, 1e-300):
            break
        x = y / y_norm
    else:
        logger.warning("power iteration hit %s iterations", max_iter)
    return lam


def box_norm(
    spec: Spectrum,
    cols: ColumnFamily,
    alpha: float,
    members: Iterable[int],
    dense_limit: int = CARLESON_DENSE_LIMIT,
    rng: np.random.Generator | None = None,
) -> float:
    """Top eigenvalue of G_jk = |λ_j|^α |λ_k|^α ⟨c_k, c_j⟩ over box members."""
    idx = np.asarray(list(members), dtype=int) - 1
    if idx.size == 0:
        return 0.0
    if cols.n_modes < spec.n_max:
        raise DomainError("column family has fewer columns than modes")
    weights = np.abs(spec.modes[idx]) ** alpha
    if cols.is_diagonal:
        return float(np.max((weights * cols.scales[idx]) ** 2))
    b = weights[:, None] * cols.dense[idx]
    if idx.size <= dense_limit:
        gram = b @ b.conj().T
        return float(linalg.eigh(gram, eigvals_only=True)[-1])
    rng = rng or np.random.default_rng(DEFAULT_SEED)
    return power_iteration(lambda x: b @ (b.conj().T @ x), idx.size, rng)


def anchored_boxes(spec: Spectrum, levels: int = CARLESON_LEVELS) -> list[CarlesonBox]:
    """Boxes h = |Re λ_n|·2^j, ω = −Im λ_n for every mode and j = 0..levels."""
    if levels < 0:
        raise DomainError("levels must be >= 0")
    scales = 2.0 ** np.arange(levels + 1)
    return [
        CarlesonBox(float(c * s), float(-w))
        for c, w in zip(spec.decay_rates, spec.frequencies, strict=True)
        for s in scales
    ]


@dataclass(frozen=True)
class CarlesonReport:
    value: float
    worst_box: CarlesonBox
    worst_members: list[int]
    value_tail: float
    n_max: int
    n_tail: int
    growth: float
    divergent: bool
    boxes: int
    lower_bound: bool = True

    def to_dict(self) -> dict[str, Any]:
        return {
            "M_hat": self.value,
            "worst_box": self.worst_box.to_dict(),
            "worst_members": self.worst_members,
            "value_at_n_tail": self.value_tail,
            "n_max": self.n_max,
            "n_tail": self.n_tail,
            "growth": self.growth,
            "divergent": self.divergent,
            "boxes": self.boxes,
            "lower_bound": self.lower_bound,
        }


def _sweep(
    spec: Spectrum,
    cols: ColumnFamily,
    alpha: float,
    boxes: list[CarlesonBox],
    dense_limit: int,
    rng: np.random.Generator,
) -> tuple[float, int, np.ndarray]:
    index = _BoxIndex(spec)
    best, best_i, best_members = 0.0, 0, np.empty(0, dtype=int)
    for i, box in enumerate(boxes):
        members = index.members(box)
        if members.size == 0:
            continue
        ratio = box_norm(spec, cols, alpha, members, dense_limit, rng) / box.h
        if ratio > best:
            best, best_i, best_members = ratio, i, members
    return best, best_i, best_members


def carleson_constant(
    spec: Spectrum,
    cols: ColumnFamily,
    alpha: float,
    sampler: Iterable[CarlesonBox] | None = None,
    levels: int = CARLESON_LEVELS,
    dense_limit: int = CARLESON_DENSE_LIMIT,
    rng: np.random.Generator | None = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> CarlesonReport:
    """M_hat = max over sampled boxes of box_norm / h, a lower bound.

    The default sampler anchors boxes at every mode. The sweep is repeated on
    the first n_max // divisor modes to expose growth.
    """
    boxes = list(sampler) if sampler is not None else anchored_boxes(spec, levels)
    if not boxes:
        raise DomainError("box sampler produced no boxes")
    rng = rng or np.random.default_rng(DEFAULT_SEED)
    value, worst, members = _sweep(spec, cols, alpha, boxes, dense_limit, rng)

    n_tail = max(spec.n_max // policy.divisor, 1)
    value_tail, _, _ = _sweep(
        spec.truncate(n_tail), cols.truncate(n_tail), alpha, boxes, dense_limit, rng
    )
    growth = growth_ratio(value, value_tail)
    divergent = growth > policy.ratio
    if divergent:
        logger.warning("Carleson ratio grows by %.4g over the truncation", growth)
    logger.debug("carleson M_hat=%.6g over %s boxes", value, len(boxes))
    return CarlesonReport(
        value=value,
        worst_box=boxes[worst],
        worst_members=[int(m) for m in members],
        value_tail=value_tail,
        n_max=spec.n_max,
        n_tail=n_tail,
        growth=growth,
        divergent=bool(divergent),
        boxes=len(boxes),
    )
