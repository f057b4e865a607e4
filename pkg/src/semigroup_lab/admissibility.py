"""Admissibility constants for diagonal observations and their oracles.

An observation D is p-admissible when ∫₀^∞ ‖D T(t)x‖^p dt ≤ M ‖x‖^p. For
diagonal D the constant is a supremum over modes; admissibility_oracle
integrates the left-hand side numerically for a given vector.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
import math
from typing import Any

import numpy as np

from .constants import MIN_DECAY_RATE, QUAD_HORIZON
from .errors import DomainError
from .harness import (
    QuadratureSpec,
    TailPolicy,
    integrate_decaying,
    integrate_segments,
)
from .spectra import OperatorSymbol, Spectrum, WeightedIndexSpace
from .truncation import DEFAULT_POLICY, ModeSup, TruncationPolicy

logger = logging.getLogger(__name__)

ORACLE_TOL = 1e-8

__all__ = [
    "AdmissibilityReport",
    "PlancherelResult",
    "admissibility_from_decay",
    "admissibility_oracle",
    "decay_bound_from_admissibility",
    "finite_time_constant",
    "l2_admissibility_constant",
    "l2_energy",
    "lp_admissibility",
    "plancherel_check",
]


@dataclass(frozen=True)
class AdmissibilityReport:
    p: float
    q: float
    exact: ModeSup
    oracle: float | None
    t1: float
    bound_kind: str  # "exact" or "upper-bound"

    @property
    def value(self) -> float:
        return self.exact.value

    @property
    def n_max(self) -> int:
        return self.exact.n_max

    @property
    def argmax(self) -> int:
        return self.exact.mode

    @property
    def divergent(self) -> bool:
        return self.exact.divergent

    @property
    def oracle_ok(self) -> bool | None:
        if self.oracle is None:
            return None
        return self.oracle <= self.exact.value * (1 + ORACLE_TOL) + ORACLE_TOL

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "M_exact": self.exact.to_dict(),
            "M_oracle": self.oracle,
            "oracle_ok": self.oracle_ok,
            "t1": self.t1,
            "n_max": self.n_max,
            "argmax_mode": self.argmax,
            "divergent": self.divergent,
            "bound_kind": self.bound_kind,
        }


def _check_p(p: float) -> float:
    p = float(p)
    if not p >= 1:
        raise DomainError(f"admissibility exponent needs p >= 1 (got {p})")
    return p


def _unit_vector(n_max: int, mode: int, space: WeightedIndexSpace | None) -> np.ndarray:
    x = np.zeros(n_max)
    x[mode - 1] = 1.0
    if space is not None:
        x[mode - 1] = space.weights[mode - 1] ** (-1.0 / space.q)
    return x


def l2_admissibility_constant(
    spec: Spectrum,
    sym: OperatorSymbol,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureSpec | None = None,
    run_oracle: bool = True,
) -> AdmissibilityReport:
    """sup_n |d(λ_n)|² / (2|Re λ_n|), checked by quadrature on the argmax mode."""
    exact = policy.reduce(sym.moduli(spec) ** 2 / (2 * spec.decay_rates))
    oracle = None
    if run_oracle:
        x = _unit_vector(spec.n_max, exact.mode, None)
        oracle = admissibility_oracle(spec, sym, 2.0, x, quad=quad)
    report = AdmissibilityReport(2.0, 2.0, exact, oracle, math.inf, "exact")
    if report.oracle_ok is False:
        logger.warning("l2 oracle %.12g exceeds closed form %.12g", oracle, exact.value)
    return report


def lp_admissibility(
    spec: Spectrum,
    space: WeightedIndexSpace | None,
    alpha: float,
    p: float,
    t1: float = math.inf,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureSpec | None = None,
) -> AdmissibilityReport:
    """p-admissibility of (−A)^{−α/p} on L^q(μ) via the Jensen chain.

    For p >= q, ∫₀^{t1} ‖(−A)^{−α/p} T(t)x‖_q^p dt ≤ (M/p)‖x‖^p with
    M = sup_n (1 − e^{−p t1 c_n}) / (c_n |λ_n|^α). The bound is attained on
    unit vectors, so it is exact when p = q.
    """
    p = _check_p(p)
    q = space.q if space is not None else 2.0
    if p < q:
        raise DomainError(f"Jensen bound needs p >= q (got p={p}, q={q})")
    t1 = float(t1)
    if not t1 > 0:
        raise DomainError(f"horizon t1 must be positive (got {t1})")
    rates = spec.decay_rates
    per_mode = 1.0 / (rates * np.abs(spec.modes) ** alpha)
    if math.isfinite(t1):
        per_mode = per_mode * -np.expm1(-p * t1 * rates)
    exact = policy.reduce(per_mode / p)

    oracle = None
    if not math.isfinite(t1):
        sym = OperatorSymbol(a=alpha / p)
        x = _unit_vector(spec.n_max, exact.mode, space)
        oracle = admissibility_oracle(spec, sym, p, x, space=space, quad=quad)
    kind = "exact" if p == q else "upper-bound"
    return AdmissibilityReport(p, q, exact, oracle, t1, kind)


def finite_time_constant(
    spec: Spectrum,
    sym: OperatorSymbol,
    p: float,
    t1: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ModeSup:
    """sup_n |d|^p (1 − e^{−p t1 c_n}) / (p c_n); t1 may be infinite."""
    p = _check_p(p)
    t1 = float(t1)
    if not t1 > 0:
        raise DomainError(f"horizon t1 must be positive (got {t1})")
    rates = spec.decay_rates
    factor = -np.expm1(-p * t1 * rates) if math.isfinite(t1) else 1.0
    return policy.reduce(sym.moduli(spec) ** p * factor / (p * rates))


def _weights(spec: Spectrum, space: WeightedIndexSpace | None) -> np.ndarray:
    if space is None:
        return np.ones(spec.n_max)
    if space.weights.size != spec.n_max:
        raise DomainError("weights and spectrum have different lengths")
    return space.weights


def _support(spec: Spectrum, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    if x.shape != (spec.n_max,):
        raise DomainError(f"vector must have {spec.n_max} entries")
    support = np.flatnonzero(x)
    if support.size == 0:
        raise DomainError("oracle needs a nonzero vector")
    if np.all(spec.decay_rates[support] < MIN_DECAY_RATE):
        raise DomainError("all support modes have |Re λ| below the decay threshold")
    return support


def _breakpoints(rates: np.ndarray, horizon: float, count: int = 32) -> list[float]:
    scales = np.unique(1.0 / rates)
    scales = scales[scales < horizon]
    if scales.size > count:
        scales = np.quantile(scales, np.linspace(0, 1, count))
    return [float(s) for s in scales]


def admissibility_oracle(
    spec: Spectrum,
    sym: OperatorSymbol,
    p: float,
    x: np.ndarray,
    T: float = QUAD_HORIZON,
    space: WeightedIndexSpace | None = None,
    quad: QuadratureSpec | None = None,
) -> float:
    """∫₀^∞ ‖D T(t)x‖_{q,μ}^p dt by quadrature on [0, T] plus a tail.

    When p = q the tail is the exact sum Σ μ|d x|^q e^{−q c T}/(q c).
    Otherwise the integrand decays at least at rate p·c_min beyond T, and the
    envelope f(T)/(p c_min) drives an extended horizon.
    """
    p = _check_p(p)
    q = space.q if space is not None else 2.0
    support = _support(spec, x)
    mu = _weights(spec, space)[support]
    amp = mu * np.abs(sym.moduli(spec)[support] * np.asarray(x)[support]) ** q
    rates = spec.decay_rates[support]
    r = q * rates
    power = p / q

    def integrand(t: float) -> float:
        return float(np.sum(amp * np.exp(-r * t)) ** power)

    base = quad or QuadratureSpec()
    if p == q:
        spec_q = QuadratureSpec(
            base.rtol, base.atol, base.max_subdivisions, TailPolicy.ANALYTIC, T
        )

        def tail(horizon: float) -> float:
            return float(np.sum(amp * np.exp(-r * horizon) / r))

    else:
        spec_q = QuadratureSpec(
            base.rtol, base.atol, base.max_subdivisions, TailPolicy.EXTENDED, T
        )
        c_min = float(max(rates.min(), MIN_DECAY_RATE))

        def tail(horizon: float) -> float:
            return integrand(horizon) / (p * c_min)

    result = integrate_decaying(
        integrand, 0.0, tail, spec_q, breakpoints=_breakpoints(r, T)
    )
    if result.flagged:
        logger.warning("admissibility oracle flagged for %s", spec.tag)
    return result.value


def l2_energy(
    spec: Spectrum,
    sym: OperatorSymbol,
    x: np.ndarray,
    space: WeightedIndexSpace | None = None,
) -> float:
    """Closed form of ∫₀^∞ ‖D T(t)x‖²: Σ μ_n |d_n x_n|² / (2 c_n)."""
    x = np.asarray(x)
    if x.shape != (spec.n_max,):
        raise DomainError(f"vector must have {spec.n_max} entries")
    mu = _weights(spec, space)
    return float(
        np.sum(mu * np.abs(sym.moduli(spec) * x) ** 2 / (2 * spec.decay_rates))
    )


@dataclass(frozen=True)
class PlancherelResult:
    xi: float
    lhs: float
    rhs: float
    closed_form: float
    flagged: bool

    @property
    def gap(self) -> float:
        """Relative gap between the time and frequency sides."""
        return abs(self.lhs - self.rhs) / max(abs(self.closed_form), 1e-300)

    def to_dict(self) -> dict[str, Any]:
        return {
            "xi": self.xi,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "closed_form": self.closed_form,
            "gap": self.gap,
            "flagged": self.flagged,
        }


def plancherel_check(
    spec: Spectrum,
    x: np.ndarray,
    xi: float,
    quad: QuadratureSpec | None = None,
) -> PlancherelResult:
    """Compare ∫₀^∞ e^{−2ξt}‖T(t)x‖² dt with (1/2π)∫ ‖R(ξ+iη)x‖² dη.

    The frequency side is integrated on [−H, H] with breakpoints at the
    support frequencies; each mode's tail beyond ±H is an exact arctan term.
    """
    xi = float(xi)
    if not xi > 0:
        raise DomainError(f"Plancherel check needs ξ > 0 (got {xi})")
    quad = quad or QuadratureSpec()
    support = _support(spec, x)
    w = np.abs(np.asarray(x)[support]) ** 2
    a = xi + spec.decay_rates[support]
    omega = spec.frequencies[support]
    closed = float(np.sum(w / (2 * a)))

    def time_side(t: float) -> float:
        return float(np.sum(w * np.exp(-2 * a * t)))

    def time_tail(horizon: float) -> float:
        return float(np.sum(w * np.exp(-2 * a * horizon) / (2 * a)))

    lhs = integrate_decaying(
        time_side,
        0.0,
        time_tail,
        quad.with_policy(TailPolicy.ANALYTIC),
        breakpoints=_breakpoints(2 * a, quad.horizon),
    )

    def freq_side(eta: float) -> float:
        return float(np.sum(w / (a**2 + (eta - omega) ** 2)))

    h = float(np.max(np.abs(omega))) + 1.0
    points = np.concatenate([omega, omega - a, omega + a])
    edges = [-h, *sorted(float(v) for v in np.unique(points) if -h < v < h), h]
    finite, _, flagged = integrate_segments(freq_side, edges, quad)
    tails = np.sum(
        w
        * (
            (np.pi / 2 - np.arctan((h - omega) / a))
            + (np.pi / 2 - np.arctan((h + omega) / a))
        )
        / a
    )
    rhs = (finite + float(tails)) / (2 * np.pi)
    result = PlancherelResult(xi, lhs.value, rhs, closed, flagged or lhs.flagged)
    logger.debug("plancherel xi=%g gap=%.3g", xi, result.gap)
    return result


def decay_bound_from_admissibility(
    report: AdmissibilityReport, c: float = 1.0
) -> float:
    """Constant in ‖D T(t)‖ ≤ c M^{1/p} / t^{1/p}; c bounds sup‖T(t)‖."""
    return float(c * report.value ** (1.0 / report.p))


def admissibility_from_decay(
    sup_norm: float, m: float, s: float, p: float = 2.0
) -> float:
    """p-admissibility constant from ‖D T(t)‖ ≤ min(sup_norm, M t^{−s}).

    Needs s·p > 1. The split point τ = (M/sup_norm)^{1/s} is optimal and
    gives sup_norm^p τ · sp/(sp − 1).
    """
    p = _check_p(p)
    if not s * p > 1:
        raise DomainError(f"decay exponent too small: need s·p > 1 (got {s * p})")
    if not (sup_norm > 0 and m > 0):
        raise DomainError("decay constants must be positive")
    tau = (m / sup_norm) ** (1.0 / s)
    return float(sup_norm**p * tau * s * p / (s * p - 1))
