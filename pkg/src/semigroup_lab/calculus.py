"""Operator norms of diagonal semigroups, resolvents and Weiss constants.

Every quantity here is a supremum over modes of a closed-form per-mode
expression, reduced with a TruncationPolicy. weiss_constant additionally
runs a half-plane grid oracle that must never exceed the closed form.
"""

from __future__ import annotations

from collections.abc import Sequence
import csv
from dataclasses import dataclass
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np
from scipy import special

from .constants import (
    GRID_ANCHOR_MODES,
    GRID_ETA_POINTS,
    GRID_XI_MAX,
    GRID_XI_MIN,
    GRID_XI_POINTS,
    WEISS_GRID_TOL,
)
from .errors import DomainError
from .spectra import OperatorSymbol, Spectrum
from .truncation import DEFAULT_POLICY, ModeSup, TruncationPolicy

logger = logging.getLogger(__name__)

__all__ = [
    "DecayCurve",
    "HalfPlaneGrid",
    "ResolventProfile",
    "WeissReport",
    "decay_curve",
    "log_decay_constant",
    "polynomial_decay_constant",
    "resolvent_norm",
    "resolvent_profile",
    "semigroup_norm",
    "weiss_constant",
    "weiss_factor",
    "weiss_from_decay",
]


def _check_time(t: float) -> float:
    t = float(t)
    if not t >= 0 or not math.isfinite(t):
        raise DomainError(f"time must be finite and >= 0 (got {t})")
    return t


def semigroup_norm(
    spec: Spectrum,
    sym: OperatorSymbol,
    t: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ModeSup:
    """‖T(t)D‖ = sup_n |d(λ_n)| e^{t Re λ_n}."""
    t = _check_time(t)
    return policy.reduce(sym.moduli(spec) * np.exp(-t * spec.decay_rates))


@dataclass(frozen=True)
class DecayCurve:
    t: np.ndarray
    values: np.ndarray
    argmax_modes: np.ndarray
    values_tail: np.ndarray
    n_max: int
    n_tail: int

    def to_rows(self) -> list[dict[str, Any]]:
        return [
            {
                "t": float(t),
                "norm": float(v),
                "argmax_mode": int(m),
                "norm_at_n_tail": float(vt),
            }
            for t, v, m, vt in zip(
                self.t, self.values, self.argmax_modes, self.values_tail, strict=True
            )
        ]

    def to_dict(self) -> dict[str, Any]:
        return {"n_max": self.n_max, "n_tail": self.n_tail, "points": self.to_rows()}

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        rows = self.to_rows()
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        return path


def _as_grid(values: Sequence[float], name: str) -> np.ndarray:
    grid = np.asarray(values, dtype=float).ravel()
    if grid.size == 0:
        raise DomainError(f"{name} grid is empty")
    if not np.all(np.isfinite(grid)):
        raise DomainError(f"{name} grid has non-finite points")
    return grid


def decay_curve(
    spec: Spectrum,
    sym: OperatorSymbol,
    t_grid: Sequence[float],
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> DecayCurve:
    """‖T(t)D‖ on a strictly increasing grid of nonnegative times."""
    t = _as_grid(t_grid, "time")
    if t[0] < 0:
        raise DomainError("time grid must be >= 0")
    if np.any(np.diff(t) <= 0):
        raise DomainError("time grid must be strictly increasing")
    moduli = sym.moduli(spec)
    rates = spec.decay_rates
    sups = [policy.reduce(moduli * np.exp(-ti * rates)) for ti in t]
    logger.debug("decay curve over %s times for %s", t.size, spec.tag)
    return DecayCurve(
        t=t,
        values=np.array([s.value for s in sups]),
        argmax_modes=np.array([s.mode for s in sups]),
        values_tail=np.array([s.value_tail for s in sups]),
        n_max=spec.n_max,
        n_tail=sups[0].n_tail,
    )


def resolvent_norm(
    spec: Spectrum,
    sym: OperatorSymbol,
    lam: complex,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ModeSup:
    """‖D R(λ, A)‖ = sup_n |d(λ_n)| / |λ − λ_n| for Re λ > 0."""
    lam = complex(lam)
    if not lam.real > 0:
        raise DomainError(f"resolvent needs Re λ > 0 (got {lam})")
    return policy.reduce(sym.moduli(spec) / np.abs(lam - spec.modes))


@dataclass(frozen=True)
class ResolventProfile:
    """g(ξ) = sup_{η} ‖D R(ξ + iη)‖ sampled on a grid."""

    xi: np.ndarray
    values: np.ndarray
    argmax_modes: np.ndarray
    values_tail: np.ndarray
    n_max: int
    n_tail: int

    def to_rows(self) -> list[dict[str, Any]]:
        return [
            {
                "xi": float(x),
                "g": float(v),
                "argmax_mode": int(m),
                "g_at_n_tail": float(vt),
            }
            for x, v, m, vt in zip(
                self.xi, self.values, self.argmax_modes, self.values_tail, strict=True
            )
        ]

    def to_dict(self) -> dict[str, Any]:
        return {"n_max": self.n_max, "n_tail": self.n_tail, "points": self.to_rows()}


def resolvent_profile(
    spec: Spectrum,
    sym: OperatorSymbol,
    xi_grid: Sequence[float],
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ResolventProfile:
    xi = _as_grid(xi_grid, "xi")
    if np.any(xi <= 0):
        raise DomainError("resolvent profile needs ξ > 0")
    xi = np.unique(xi)
    moduli = sym.moduli(spec)
    rates = spec.decay_rates
    sups = [policy.reduce(moduli / (x + rates)) for x in xi]
    return ResolventProfile(
        xi=xi,
        values=np.array([s.value for s in sups]),
        argmax_modes=np.array([s.mode for s in sups]),
        values_tail=np.array([s.value_tail for s in sups]),
        n_max=spec.n_max,
        n_tail=sups[0].n_tail,
    )


def weiss_factor(c: np.ndarray | float, p: float) -> np.ndarray:
    """sup_{ξ>0} ξ^{1−1/p} / (ξ + c); attained at ξ = (p−1)c for p > 1."""
    c = np.asarray(c, dtype=float)
    if p == 1:
        return 1.0 / c
    return (p - 1) ** (1 - 1 / p) / (p * c ** (1 / p))


@dataclass(frozen=True)
class HalfPlaneGrid:
    xi: np.ndarray
    eta: np.ndarray

    @classmethod
    def for_modes(
        cls,
        spec: Spectrum,
        per_mode: np.ndarray,
        p: float,
        xi_min: float = GRID_XI_MIN,
        xi_max: float = GRID_XI_MAX,
        xi_points: int = GRID_XI_POINTS,
        eta_points: int = GRID_ETA_POINTS,
        anchor_modes: int = GRID_ANCHOR_MODES,
    ) -> HalfPlaneGrid:
        """Log grid in ξ, symmetric grid in η, plus stationary points of anchors.

        Anchors are the modes with the largest per-mode constant.
        """
        if xi_points < 1 or eta_points < 1 or not 0 < xi_min < xi_max:
            raise DomainError("half-plane grid is empty")
        order = np.argsort(-per_mode, kind="stable")[:anchor_modes]
        xi = np.geomspace(xi_min, xi_max, xi_points)
        if p > 1:
            xi = np.concatenate([xi, (p - 1) * spec.decay_rates[order]])
        span = 2.0 * float(np.max(np.abs(spec.frequencies)))
        eta = np.linspace(-span, span, eta_points) if span > 0 else np.zeros(1)
        eta = np.concatenate([eta, spec.frequencies[order]])
        return cls(np.unique(xi), np.unique(eta))


@dataclass(frozen=True)
class WeissReport:
    p: float
    exact: ModeSup
    grid_value: float
    grid_point: complex
    grid_bound_ok: bool
    boundary_supremum: bool
    tolerance: float

    @property
    def value(self) -> float:
        return self.exact.value

    @property
    def divergent(self) -> bool:
        return self.exact.divergent

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "K_exact": self.exact.to_dict(),
            "K_grid": self.grid_value,
            "grid_point": [self.grid_point.real, self.grid_point.imag],
            "grid_bound_ok": self.grid_bound_ok,
            "boundary_supremum": self.boundary_supremum,
            "tolerance": self.tolerance,
        }


def _grid_sup(
    spec: Spectrum, moduli: np.ndarray, grid: HalfPlaneGrid, p: float
) -> tuple[float, complex]:
    rates = spec.decay_rates
    freqs = spec.frequencies
    weight = grid.xi ** (1 - 1 / p)
    best, best_point = -np.inf, complex(grid.xi[0], grid.eta[0])
    shifted = grid.xi[:, None] + rates[None, :]
    for eta in grid.eta:
        dist = np.hypot(shifted, (eta - freqs)[None, :])
        values = weight * np.max(moduli[None, :] / dist, axis=1)
        i = int(np.argmax(values))
        if values[i] > best:
            best, best_point = float(values[i]), complex(grid.xi[i], eta)
    return best, best_point


def weiss_constant(
    spec: Spectrum,
    sym: OperatorSymbol,
    p: float,
    grid_settings: dict | None = None,
    tolerance: float = WEISS_GRID_TOL,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> WeissReport:
    """p-Weiss constant sup_{Re λ>0} (Re λ)^{1−1/p} ‖D R(λ, A)‖.

    The closed form is sup_n |d(λ_n)| s_p(|Re λ_n|). The grid oracle
    evaluates the same expression on a HalfPlaneGrid and is recorded as a
    check, never as the answer.
    """
    p = float(p)
    if not p >= 1:
        raise DomainError(f"Weiss exponent needs p >= 1 (got {p})")
    moduli = sym.moduli(spec)
    per_mode = moduli * weiss_factor(spec.decay_rates, p)
    exact = policy.reduce(per_mode)

    grid = HalfPlaneGrid.for_modes(spec, per_mode, p, **(grid_settings or {}))
    grid_value, grid_point = _grid_sup(spec, moduli, grid, p)
    ok = grid_value <= exact.value + tolerance
    if not ok:
        logger.warning(
            "grid Weiss value %.12g exceeds closed form %.12g", grid_value, exact.value
        )
    logger.debug(
        "weiss p=%s K=%.6g (mode %s) grid=%.6g", p, exact.value, exact.mode, grid_value
    )
    return WeissReport(
        p=p,
        exact=exact,
        grid_value=grid_value,
        grid_point=grid_point,
        grid_bound_ok=bool(ok),
        boundary_supremum=p == 1,
        tolerance=tolerance,
    )


def polynomial_decay_constant(
    spec: Spectrum,
    sym: OperatorSymbol,
    s: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ModeSup:
    """sup_{t>0} t^s ‖T(t)D‖, exactly: sup_n |d(λ_n)| (s/(e c_n))^s."""
    if not s >= 0:
        raise DomainError(f"decay exponent must be >= 0 (got {s})")
    moduli = sym.moduli(spec)
    if s == 0:
        return policy.reduce(moduli)
    return policy.reduce(moduli * (s / (math.e * spec.decay_rates)) ** s)


def log_decay_constant(
    spec: Spectrum,
    sym: OperatorSymbol,
    beta: float,
    t0: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ModeSup:
    """sup_{t>=t0} (log t)^β ‖T(t)D‖, exactly per mode.

    (log t)^β e^{−ct} is unimodal on t > 1 with its peak where
    t log t = β/c, i.e. t* = y/W(y) with y = β/c.
    """
    if not beta >= 0:
        raise DomainError(f"log exponent must be >= 0 (got {beta})")
    if not t0 >= 1:
        raise DomainError(f"log decay needs t0 >= 1 (got {t0})")
    moduli = sym.moduli(spec)
    rates = spec.decay_rates
    if beta == 0:
        return policy.reduce(moduli * np.exp(-rates * t0))
    y = beta / rates
    t_star = np.maximum(y / special.lambertw(y).real, t0)
    log_values = beta * np.log(np.log(t_star)) - rates * t_star
    return policy.reduce(moduli * np.exp(log_values))


def weiss_from_decay(m: float, p: float) -> float:
    """p-Weiss constant implied by ‖T(t)D‖ <= M t^{−1/p}: M Γ(1 − 1/p)."""
    if not p > 1:
        raise DomainError(f"decay-to-Weiss transfer needs p > 1 (got {p})")
    return float(m * special.gamma(1 - 1 / p))
