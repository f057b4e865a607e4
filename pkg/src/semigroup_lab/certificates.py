"""Explicit constant chains linking decay, Weiss conditions and admissibility.

admissibility_certificate turns a logarithmic decay rate (β > 1/2) plus a
2-Weiss bound into an explicit 2-admissibility constant, by splitting the
time axis at the points τ_n = τ₁/μ_n with μ_n = (τ₁/τ₂)^{n−1}.
faster_decay_constant and strong_weiss_constants carry the two directions
between the strong 2-Weiss condition and decay faster than t^{−1/2}.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cache
import logging
import math
from typing import Any

import numpy as np
from scipy import optimize, special

from .admissibility import finite_time_constant
from .calculus import (
    log_decay_constant,
    polynomial_decay_constant,
    weiss_constant,
)
from .constants import DEFAULT_SEED
from .errors import DomainError, HypothesisError
from .spectra import OperatorSymbol, Spectrum
from .truncation import DEFAULT_POLICY, ModeSup, TruncationPolicy

logger = logging.getLogger(__name__)

IDENTITY_TOL = 1e-12

__all__ = [
    "Certificate",
    "CertificateInputs",
    "FasterDecay",
    "StrongWeiss",
    "admissibility_certificate",
    "calibrate_moment_constant",
    "faster_decay_constant",
    "faster_decay_envelope",
    "measure_certificate_inputs",
    "measure_faster_decay",
    "measure_strong_weiss",
    "solve_tau_pair",
    "strong_weiss_constants",
]


@cache
def solve_tau_pair() -> tuple[float, float]:
    """The two roots of τ e^{−τ} = 1/(2e), one in (0, 1) and one in (1, 10)."""

    def f(tau: float) -> float:
        return tau * math.exp(-tau) - 1 / (2 * math.e)

    tau1 = optimize.brentq(f, 0.0, 1.0, xtol=1e-15)
    tau2 = optimize.brentq(f, 1.0, 10.0, xtol=1e-15)
    return float(tau1), float(tau2)


@dataclass(frozen=True)
class CertificateInputs:
    """Measured or user-supplied constants feeding admissibility_certificate.

    m0: ‖T(t)(−A)^{−α}‖ ≤ m0/(log t)^β for t ≥ t0
    c: ‖(−A)^{−α}‖
    k: 2-Weiss constant of C(−A)^α
    m_ft: t1 ↦ finite-time 2-admissibility constant of C on [0, t1]
    """

    alpha: float
    beta: float
    m0: float
    t0: float
    c: float
    k: float
    m_ft: Callable[[float], float]
    measured: dict[str, ModeSup] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "M0": self.m0,
            "t0": self.t0,
            "c": self.c,
            "K": self.k,
            "measured": {name: sup.to_dict() for name, sup in self.measured.items()},
        }


@dataclass(frozen=True)
class Certificate:
    inputs: CertificateInputs
    m1: float
    m2: float
    tau1: float
    tau2: float
    m_index: int
    mu_m: float
    tau_m: float
    series: float
    m3: float
    m_ft_at_tau_m: float
    m_adm: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "inputs": self.inputs.to_dict(),
            "M1": self.m1,
            "M2": self.m2,
            "tau1": self.tau1,
            "tau2": self.tau2,
            "tau_ratio": self.tau1 / self.tau2,
            "m": self.m_index,
            "mu_m": self.mu_m,
            "tau_m": self.tau_m,
            "series": self.series,
            "M3": self.m3,
            "M_ft(tau_m)": self.m_ft_at_tau_m,
            "M_adm": self.m_adm,
        }


def _check_gates(beta: float, t0: float) -> None:
    if not beta > 0.5:
        raise HypothesisError(
            f"hypothesis β > 1/2 violated: β must exceed 1/2 (got {beta})"
        )
    threshold = math.exp(2 * beta)
    if not t0 > threshold:
        raise HypothesisError(
            f"hypothesis t0 > e^(2β) violated: need t0 > {threshold:.6g} (got {t0})"
        )


def admissibility_certificate(inputs: CertificateInputs) -> Certificate:
    """Explicit 2-admissibility constant M_adm = M_ft(τ_m) + M₃."""
    alpha, beta, t0 = inputs.alpha, inputs.beta, inputs.t0
    _check_gates(beta, t0)
    if min(inputs.m0, inputs.c, inputs.k) < 0:
        raise DomainError("certificate constants must be nonnegative")

    log_t0 = math.log(t0)
    m1 = 1 / (1 - 2 * beta / log_t0) + math.exp(-1)
    m2 = inputs.k**2 * (
        inputs.c**2 * log_t0 ** (2 * beta) / 2 + inputs.m0**2 * m1 / 2
    )

    tau1, tau2 = solve_tau_pair()
    spacing = math.log(tau2 / tau1)
    # smallest m with (τ₁/τ₂)^{m−1} < 1/(2 t0)
    m_index = math.floor(math.log(2 * t0) / spacing) + 2
    mu_m = (tau1 / tau2) ** (m_index - 1)
    tau_m = tau1 / mu_m

    offset = m_index - 1 - math.log(2) / spacing
    series = spacing ** (-2 * beta) * float(special.zeta(2 * beta, offset))
    m3 = (2 * math.e) ** 2 * m2 * series
    m_ft = float(inputs.m_ft(tau_m))
    cert = Certificate(
        inputs=inputs,
        m1=m1,
        m2=m2,
        tau1=tau1,
        tau2=tau2,
        m_index=m_index,
        mu_m=mu_m,
        tau_m=tau_m,
        series=series,
        m3=m3,
        m_ft_at_tau_m=m_ft,
        m_adm=m_ft + m3,
    )
    logger.debug("certificate alpha=%s beta=%s M_adm=%.6g", alpha, beta, cert.m_adm)
    return cert


def measure_certificate_inputs(
    spec: Spectrum,
    sym_c: OperatorSymbol,
    alpha: float,
    beta: float,
    t0: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> CertificateInputs:
    """Measure every certificate input exactly from the spectrum."""
    _check_gates(beta, t0)
    power = OperatorSymbol(a=alpha)
    m0 = log_decay_constant(spec, power, beta, t0, policy)
    c = policy.reduce(power.moduli(spec))
    k = weiss_constant(spec, sym_c.times_power(alpha), 2.0, policy=policy).exact

    def m_ft(t1: float) -> float:
        return finite_time_constant(spec, sym_c, 2.0, t1, policy).value

    return CertificateInputs(
        alpha=alpha,
        beta=beta,
        m0=m0.value,
        t0=t0,
        c=c.value,
        k=k.value,
        m_ft=m_ft,
        measured={"M0": m0, "c": c, "K": k},
    )


def faster_decay_constant(m1: float, m2: float, beta: float) -> float:
    """‖C T(t)‖ ≤ √(2^{1+β}) M₁M₂ / √(t^{1+β}).

    M₁ bounds √t ‖C(−A)^α T(t)‖ and M₂ bounds √(t^β) ‖T(t)(−A)^{−α}‖.
    """
    if not beta > 0:
        raise DomainError(f"beta must be positive (got {beta})")
    return math.sqrt(2 ** (1 + beta)) * m1 * m2


def faster_decay_envelope(
    m: float, beta: float, t: float | np.ndarray
) -> float | np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("envelope needs t > 0")
    out = m / np.sqrt(t ** (1 + beta))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FasterDecay:
    alpha: float
    beta: float
    m1: ModeSup
    m2: ModeSup
    constant: float

    def envelope(self, t: float | np.ndarray) -> float | np.ndarray:
        return faster_decay_envelope(self.constant, self.beta, t)

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "M1": self.m1.to_dict(),
            "M2": self.m2.to_dict(),
            "constant": self.constant,
            "decay_exponent": (1 + self.beta) / 2,
        }


def measure_faster_decay(
    spec: Spectrum,
    sym_c: OperatorSymbol,
    alpha: float,
    beta: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> FasterDecay:
    """M₁, M₂ from polynomial_decay_constant and the resulting envelope."""
    m1 = polynomial_decay_constant(spec, sym_c.times_power(alpha), 0.5, policy)
    m2 = polynomial_decay_constant(spec, OperatorSymbol(a=alpha), beta / 2, policy)
    return FasterDecay(
        alpha, beta, m1, m2, faster_decay_constant(m1.value, m2.value, beta)
    )


@dataclass(frozen=True)
class StrongWeiss:
    alpha: float
    beta: float
    gamma: float
    m3: float
    k: float
    identity_residual: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "M3": self.m3,
            "K": self.k,
            "identity_residual": self.identity_residual,
        }


def strong_weiss_constants(
    m1: float, m2: float, alpha: float, beta: float, c_moment: float = 1.0
) -> StrongWeiss:
    """Constants for the strong 2-Weiss condition from two decay bounds.

    With ‖C(−A)^α T(t)‖ ≤ M₁ and ‖C T(t)‖ ≤ M₂/√(t^{1+β}), the choice
    γ = αβ/(1+β) gives ‖C(−A)^γ T(t)‖ ≤ M₃/√t and a 2-Weiss constant M₃√π
    for C(−A)^γ.
    """
    if not (alpha > 0 and beta > 0):
        raise DomainError("alpha and beta must be positive")
    gamma = alpha * beta / (1 + beta)
    theta = gamma / alpha
    residual = abs((1 + beta) / 2 * (1 - theta) - 0.5)
    if residual > IDENTITY_TOL:
        raise DomainError(f"exponent identity fails by {residual:.3g}")
    m3 = c_moment * m1**theta * m2 ** (1 - theta)
    return StrongWeiss(alpha, beta, gamma, m3, m3 * math.sqrt(math.pi), residual)


def measure_strong_weiss(
    spec: Spectrum,
    sym_c: OperatorSymbol,
    alpha: float,
    beta: float,
    c_moment: float = 1.0,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> tuple[StrongWeiss, ModeSup, ModeSup]:
    """Exact M₁, M₂ for a diagonal C and the strong 2-Weiss constants."""
    m1 = polynomial_decay_constant(spec, sym_c.times_power(alpha), 0.0, policy)
    m2 = polynomial_decay_constant(spec, sym_c, (1 + beta) / 2, policy)
    return strong_weiss_constants(m1.value, m2.value, alpha, beta, c_moment), m1, m2


def calibrate_moment_constant(
    spec: Spectrum,
    alpha: float,
    gamma: float,
    rng: np.random.Generator | None = None,
    samples: int = 32,
) -> float:
    """Largest ratio ‖(−A)^γ x‖ / (‖(−A)^α x‖^{γ/α} ‖x‖^{1−γ/α}) seen.

    Test vectors are the unit modes plus random Gaussian vectors. For a
    diagonal generator the ratio never exceeds 1 and equals 1 on unit modes.
    """
    if not 0 < gamma <= alpha:
        raise DomainError("need 0 < gamma <= alpha")
    rng = rng or np.random.default_rng(DEFAULT_SEED)
    theta = gamma / alpha
    mod = np.abs(spec.modes)
    best = float(np.max(mod**gamma / (mod**alpha) ** theta))
    for _ in range(samples):
        x = rng.normal(size=spec.n_max) + 1j * rng.normal(size=spec.n_max)
        top = np.linalg.norm(mod**gamma * x)
        high = np.linalg.norm(mod**alpha * x)
        base = np.linalg.norm(x)
        best = max(best, float(top / (high**theta * base ** (1 - theta))))
    return best
