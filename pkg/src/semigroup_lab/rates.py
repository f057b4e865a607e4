"""Decay-rate fitting, log-integral bounds and decay/resolvent equivalence.

Rates are modelled as v(t) ≈ C t^{−β} (log t)^{−γ} (polylog) or
v(t) ≈ C t^{−1/α} (poly) and fitted by linear least squares in log space.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
import itertools
import logging
import math
from typing import Any

import numpy as np

from .calculus import ResolventProfile
from .constants import (
    EQUIVALENCE_GROWTH_THRESHOLD,
    EQUIVALENCE_POINTS_PER_DECADE,
    FIT_MIN_POINTS,
    FIT_WINDOW_DECADES,
)
from .errors import DomainError, HypothesisError, InsufficientDataError
from .harness import QuadratureSpec, TailPolicy, integrate_decaying
from .spectra import OperatorSymbol, Spectrum
from .truncation import ModeSup, mode_sup

logger = logging.getLogger(__name__)

FIT_MIN_TIME = 10.0

__all__ = [
    "EquivalenceReport",
    "F_gamma",
    "IntegralBoundCheck",
    "IntegralBoundConstant",
    "RateModel",
    "check_log_decay_equivalence",
    "fit_rate",
    "integral_bound_constant",
    "predict_decay_from_resolvent",
    "transference_envelope",
    "verify_integral_bound",
]


@dataclass(frozen=True)
class RateModel:
    model: str
    log_constant: float
    beta: float | None
    gamma: float | None
    inv_alpha: float | None
    fit_window: tuple[float, float]
    residual: float
    n_points: int

    def predict(self, t: np.ndarray | float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.model == "poly":
            return np.exp(self.log_constant - self.inv_alpha * np.log(t))
        return np.exp(
            self.log_constant
            - self.beta * np.log(t)
            - self.gamma * np.log(np.log(t))
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "constant": math.exp(self.log_constant),
            "beta": self.beta,
            "gamma": self.gamma,
            "inv_alpha": self.inv_alpha,
            "fit_window": list(self.fit_window),
            "residual": self.residual,
            "n_points": self.n_points,
        }


def _lstsq(columns: list[np.ndarray], y: np.ndarray) -> tuple[np.ndarray, float]:
    design = np.column_stack(columns)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    return coef, float(np.sqrt(np.mean(resid**2)))


def _fit_polylog(log_t: np.ndarray, y: np.ndarray) -> tuple[float, float, float, float]:
    """Best (log C, β, γ, rms) with β ∈ [0, 1] and γ >= 0.

    Candidates hold β at a bound and/or γ at 0; the feasible candidate with
    the smallest residual wins.
    """
    log_log_t = np.log(log_t)
    ones = np.ones_like(y)
    best = None
    for beta_fixed, gamma_fixed in itertools.product((None, 0.0, 1.0), (None, 0.0)):
        target = y.copy()
        columns = [ones]
        if beta_fixed is None:
            columns.append(-log_t)
        else:
            target = target + beta_fixed * log_t
        if gamma_fixed is None:
            columns.append(-log_log_t)
        coef, rms = _lstsq(columns, target)
        coef = list(coef)
        log_c = coef.pop(0)
        beta = coef.pop(0) if beta_fixed is None else beta_fixed
        gamma = coef.pop(0) if gamma_fixed is None else gamma_fixed
        if not (-1e-12 <= beta <= 1 + 1e-12 and gamma >= -1e-12):
            continue
        if best is None or rms < best[3] - 1e-15:
            best = (float(log_c), min(max(beta, 0.0), 1.0), max(gamma, 0.0), rms)
    return best


def fit_rate(
    t: Sequence[float],
    values: Sequence[float],
    model: str = "poly",
    window: tuple[float, float] | None = None,
    window_decades: float = FIT_WINDOW_DECADES,
    min_points: int = FIT_MIN_POINTS,
) -> RateModel:
    """Fit a decay law to samples (t, v) with t >= 10.

    Args:
        t, values: samples; values must be positive inside the window
        model: "poly" (C t^{−1/α}) or "polylog" (C t^{−β}(log t)^{−γ})
        window: (t_lo, t_hi); default is the last window_decades decades
        min_points: fewer usable samples raise InsufficientDataError
    """
    if model not in ("poly", "polylog"):
        raise DomainError(f"unknown rate model '{model}'")
    t = np.asarray(t, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.shape != v.shape:
        raise DomainError("t and values must have the same length")
    usable = t >= FIT_MIN_TIME
    if not np.any(usable):
        raise InsufficientDataError("no samples with t >= 10")
    if window is None:
        t_hi = float(t[usable].max())
        window = (max(FIT_MIN_TIME, t_hi / 10**window_decades), t_hi)
    lo, hi = window
    mask = usable & (t >= lo) & (t <= hi)
    if int(mask.sum()) < min_points:
        raise InsufficientDataError(
            f"need at least {min_points} samples in [{lo:g}, {hi:g}], "
            f"found {int(mask.sum())}"
        )
    if np.any(v[mask] <= 0):
        raise DomainError("rate fit needs positive values")

    log_t = np.log(t[mask])
    y = np.log(v[mask])
    if model == "poly":
        coef, rms = _lstsq([np.ones_like(y), -log_t], y)
        result = RateModel(
            "poly", float(coef[0]), None, None, float(coef[1]), window, rms, y.size
        )
    else:
        log_c, beta, gamma, rms = _fit_polylog(log_t, y)
        result = RateModel(
            "polylog", log_c, beta, gamma, None, window, rms, y.size
        )
    logger.debug("fit %s on [%g, %g]: %s", model, lo, hi, result.to_dict())
    return result


def F_gamma(xi: float | np.ndarray, gamma: float) -> float | np.ndarray:
    """|log ξ|^{1−γ} (γ < 1), log|log ξ| (γ = 1), 1 (γ > 1) on 0 < ξ < 1/e."""
    arr = np.asarray(xi, dtype=float)
    if np.any(arr <= 0) or np.any(arr >= math.exp(-1)):
        raise DomainError("F_gamma is defined on 0 < ξ < 1/e")
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0 (got {gamma})")
    mag = np.abs(np.log(arr))
    if gamma < 1:
        out = mag ** (1 - gamma)
    elif gamma == 1:
        out = np.log(mag)
    else:
        out = np.ones_like(arr)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class IntegralBoundConstant:
    """Constant M in ∫_{t0}^∞ e^{−ξt} t^{−β}(log t)^{−γ} dt ≤ M·rhs(ξ).

    rhs(ξ) is ξ^{β−1}|log ξ|^{−γ} for β < 1 and F_γ(ξ) for β = 1.
    """

    beta: float
    gamma: float
    t0: float
    threshold: float
    m0: float
    m: float
    displayed_m0: float | None = None
    notes: list[str] = field(default_factory=list)

    def rhs(self, xi: float) -> float:
        if self.beta == 1:
            return self.m * F_gamma(xi, self.gamma)
        return self.m / (xi ** (1 - self.beta) * abs(math.log(xi)) ** self.gamma)

    def to_dict(self) -> dict[str, Any]:
        return {
            "beta": self.beta,
            "gamma": self.gamma,
            "t0": self.t0,
            "threshold": self.threshold,
            "M0": self.m0,
            "M": self.m,
            "displayed_M0": self.displayed_m0,
            "notes": list(self.notes),
        }


def integral_bound_constant(beta: float, gamma: float, t0: float) -> IntegralBoundConstant:
    """Explicit M for the log-weighted Laplace integral bound.

    For 0 ≤ β < 1 this needs t0 > e^{γ/(1−β)}; with r = γ/((1−β) log t0),
    M = 1/((1−β)(1−r)) + e^{−1}. For β = 1 it needs t0 > e.
    """
    if not 0 <= beta <= 1:
        raise DomainError(f"beta must lie in [0, 1] (got {beta})")
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0 (got {gamma})")
    inv_e = math.exp(-1)

    if beta == 1:
        threshold = math.e
        if not t0 > threshold:
            raise HypothesisError(f"t0 must exceed e for beta = 1 (got {t0})")
        log_t0 = math.log(t0)
        if gamma < 1:
            m0 = 1 / (1 - gamma)
            m = m0 + inv_e / log_t0
        elif gamma == 1:
            m0 = 1.0
            m = m0 + inv_e / (log_t0 * math.log(log_t0))
        else:
            m0 = log_t0 ** (1 - gamma) / (gamma - 1)
            m = m0 + inv_e / log_t0**gamma
        return IntegralBoundConstant(beta, gamma, t0, threshold, m0, m)

    threshold = math.exp(gamma / (1 - beta))
    if not t0 > threshold:
        raise HypothesisError(
            f"t0 must exceed e^(gamma/(1-beta)) = {threshold:.6g} (got {t0})"
        )
    r = gamma / ((1 - beta) * math.log(t0))
    m0 = 1 / ((1 - beta) * (1 - r))
    displayed = (1 / (1 - beta)) * (1 - r)
    notes = []
    if r > 0:
        notes.append(
            "the product form (1/(1-beta))(1-r) understates M0; "
            "the integration-by-parts bound gives 1/((1-beta)(1-r))"
        )
    return IntegralBoundConstant(
        beta, gamma, t0, threshold, m0, m0 + inv_e, displayed, notes
    )


@dataclass(frozen=True)
class IntegralBoundCheck:
    constant: IntegralBoundConstant
    rows: list[dict[str, float]]
    worst_ratio: float
    worst_xi: float
    flagged: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "constant": self.constant.to_dict(),
            "rows": self.rows,
            "worst_ratio": self.worst_ratio,
            "worst_xi": self.worst_xi,
            "flagged": self.flagged,
        }


def _log_integral(
    beta: float, gamma: float, t0: float, xi: float, quad: QuadratureSpec
) -> tuple[float, bool]:
    """∫_{t0}^∞ e^{−ξt} t^{−β}(log t)^{−γ} dt computed in s = ξt."""
    log_xi = math.log(xi)

    def h(s: float) -> float:
        return math.exp(-s) * s ** (-beta) * (math.log(s) - log_xi) ** (-gamma)

    start = xi * t0
    breaks = np.geomspace(start, 1.0, max(int(math.log10(1 / start)) + 2, 2))
    result = integrate_decaying(
        h, start, h, quad.with_policy(TailPolicy.EXTENDED), breakpoints=breaks[1:]
    )
    return xi ** (beta - 1) * result.value, result.flagged


def verify_integral_bound(
    beta: float,
    gamma: float,
    t0: float,
    xi_grid: Sequence[float],
    quad: QuadratureSpec | None = None,
) -> IntegralBoundCheck:
    """Ratio of the quadrature value to the explicit bound at each ξ."""
    constant = integral_bound_constant(beta, gamma, t0)
    xi_values = np.asarray(xi_grid, dtype=float).ravel()
    if xi_values.size == 0:
        raise DomainError("xi grid is empty")
    if np.any(xi_values <= 0) or np.any(xi_values >= 1 / t0):
        raise DomainError(f"every ξ must lie in (0, 1/t0) = (0, {1 / t0:.6g})")
    quad = quad or QuadratureSpec()
    rows = []
    flagged = False
    for xi in xi_values:
        lhs, flag = _log_integral(beta, gamma, t0, float(xi), quad)
        rhs = constant.rhs(float(xi))
        flagged = flagged or flag
        rows.append({"xi": float(xi), "lhs": lhs, "rhs": rhs, "ratio": lhs / rhs})
    worst = max(rows, key=lambda row: row["ratio"])
    if worst["ratio"] > 1:
        logger.warning(
            "integral bound violated at xi=%g: ratio %.6g", worst["xi"], worst["ratio"]
        )
    return IntegralBoundCheck(constant, rows, worst["ratio"], worst["xi"], flagged)


def predict_decay_from_resolvent(
    xi: Sequence[float], g: Sequence[float], t: float | np.ndarray
) -> float | np.ndarray:
    """g(1/t)/t with g interpolated linearly in log-log coordinates."""
    xi = np.asarray(xi, dtype=float)
    g = np.asarray(g, dtype=float)
    order = np.argsort(xi)
    xi, g = xi[order], g[order]
    if np.any(xi <= 0) or np.any(g <= 0):
        raise DomainError("profile must be positive")
    t_arr = np.asarray(t, dtype=float)
    target = 1.0 / t_arr
    if np.any(target < xi[0] * (1 - 1e-12)) or np.any(target > xi[-1] * (1 + 1e-12)):
        raise DomainError(
            f"1/t outside the profile range [{xi[0]:.3g}, {xi[-1]:.3g}]"
        )
    log_g = np.interp(np.log(target), np.log(xi), np.log(g))
    out = np.exp(log_g) / t_arr
    return float(out) if out.ndim == 0 else out


def transference_envelope(
    profile: ResolventProfile, t: float | np.ndarray, c: float = 1.0
) -> float | np.ndarray:
    """√2·e·c²·g(1/t)/t, an upper bound for ‖D T(t)‖ when sup‖T(t)‖ ≤ c."""
    base = predict_decay_from_resolvent(profile.xi, profile.values, t)
    return math.sqrt(2) * math.e * c**2 * base


@dataclass(frozen=True)
class EquivalenceReport:
    beta: float
    gamma: float
    resolvent_side: ModeSup
    decay_side: ModeSup
    threshold: float

    @property
    def resolvent_bounded(self) -> bool:
        return not self.resolvent_side.divergent

    @property
    def decay_bounded(self) -> bool:
        return not self.decay_side.divergent

    @property
    def verdict(self) -> str:
        if self.resolvent_bounded and self.decay_bounded:
            return "both-bounded"
        if not self.resolvent_bounded and not self.decay_bounded:
            return "both-divergent"
        return "inconsistent"

    @property
    def consistent(self) -> bool:
        return self.verdict != "inconsistent"

    def to_dict(self) -> dict[str, Any]:
        return {
            "beta": self.beta,
            "gamma": self.gamma,
            "resolvent_side": self.resolvent_side.to_dict(),
            "decay_side": self.decay_side.to_dict(),
            "growth_threshold": self.threshold,
            "verdict": self.verdict,
        }


def _log_grid(lo: float, hi: float, per_decade: int) -> np.ndarray:
    decades = math.log10(hi / lo)
    return np.geomspace(lo, hi, max(int(math.ceil(decades * per_decade)) + 1, 2))


def check_log_decay_equivalence(
    spec: Spectrum,
    sym: OperatorSymbol,
    beta: float,
    gamma: float,
    points_per_decade: int = EQUIVALENCE_POINTS_PER_DECADE,
    growth_threshold: float = EQUIVALENCE_GROWTH_THRESHOLD,
    divisor: int = 10,
) -> EquivalenceReport:
    """Compare sup_{ξ<1} g(ξ)ξ^{1−β}|log ξ|^γ with sup_{t≥1} ‖T(t)D‖t^β(log t)^γ.

    Both suprema are taken per mode over grids scaled to the spectrum and
    then reduced at n_max and n_max/divisor; a side is bounded when its
    growth stays within growth_threshold.
    """
    if not 0 <= beta < 1 or gamma < 0:
        raise DomainError("need 0 <= beta < 1 and gamma >= 0")
    moduli = sym.moduli(spec)
    rates = spec.decay_rates
    c_min = float(rates.min())

    xi = _log_grid(0.1 * c_min, 1.0, points_per_decade)[:-1]
    xi_weight = xi ** (1 - beta) * np.abs(np.log(xi)) ** gamma
    t = _log_grid(1.0, 100.0 / c_min, points_per_decade)
    t_weight = t**beta * np.log(t) ** gamma

    resolvent_per_mode = np.empty(spec.n_max)
    decay_per_mode = np.empty(spec.n_max)
    chunk = max(1, 2_000_000 // max(xi.size, t.size))
    for start in range(0, spec.n_max, chunk):
        sl = slice(start, start + chunk)
        c = rates[sl][:, None]
        resolvent_per_mode[sl] = moduli[sl] * np.max(xi_weight / (xi + c), axis=1)
        decay_per_mode[sl] = moduli[sl] * np.max(t_weight * np.exp(-c * t), axis=1)

    report = EquivalenceReport(
        beta,
        gamma,
        mode_sup(resolvent_per_mode, growth_threshold, divisor),
        mode_sup(decay_per_mode, growth_threshold, divisor),
        growth_threshold,
    )
    if not report.consistent:
        logger.warning(
            "log-decay equivalence inconsistent for beta=%s gamma=%s", beta, gamma
        )
    return report
