"""Quadrature and sup-search oracles shared by the numeric modules.

integrate_decaying handles improper integrals on [a, ∞) whose tail beyond a
finite horizon is either known exactly (analytic policy) or bounded by an
envelope (extended policy, where the horizon grows until the bound is
negligible). sup_search scans a grid and refines the best cell locally.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum
import logging
import warnings

import numpy as np
from scipy import integrate, optimize

from .constants import (
    QUAD_ATOL,
    QUAD_HORIZON,
    QUAD_MAX_SUBDIVISIONS,
    QUAD_RTOL,
    SUP_SEARCH_POINTS,
    SUP_SEARCH_XTOL,
)
from .errors import DomainError

logger = logging.getLogger(__name__)

MAX_HORIZON_DOUBLINGS = 60

__all__ = [
    "QuadratureResult",
    "QuadratureSpec",
    "SupResult",
    "TailPolicy",
    "integrate_decaying",
    "integrate_segments",
    "sup_search",
]


class TailPolicy(str, Enum):
    ANALYTIC = "analytic"
    EXTENDED = "extended"


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for integrate_decaying."""

    rtol: float = QUAD_RTOL
    atol: float = QUAD_ATOL
    max_subdivisions: int = QUAD_MAX_SUBDIVISIONS
    tail_policy: TailPolicy = TailPolicy.ANALYTIC
    horizon: float = QUAD_HORIZON

    def __post_init__(self) -> None:
        if not (self.rtol > 0 and self.atol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")
        if not self.horizon > 0:
            raise DomainError("quadrature horizon must be positive")
        object.__setattr__(self, "tail_policy", TailPolicy(self.tail_policy))

    def with_policy(self, policy: TailPolicy) -> QuadratureSpec:
        return QuadratureSpec(
            self.rtol, self.atol, self.max_subdivisions, policy, self.horizon
        )

    def tightened(self, factor: float = 10.0) -> QuadratureSpec:
        return QuadratureSpec(
            self.rtol / factor,
            self.atol / factor,
            self.max_subdivisions,
            self.tail_policy,
            self.horizon,
        )


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float  # quadrature error estimate on the finite part
    tail: float  # exact tail (analytic) or remaining bound (extended)
    horizon: float
    flagged: bool  # subdivision budget exhausted somewhere


def integrate_segments(
    f: Callable[[float], float],
    edges: Sequence[float],
    quad: QuadratureSpec,
) -> tuple[float, float, bool]:
    """Sum of quad over consecutive edges: (value, error, flagged)."""
    total, err, flagged = 0.0, 0.0, False
    for lo, hi in zip(edges[:-1], edges[1:], strict=True):
        if hi <= lo:
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                val, est = integrate.quad(
                    f,
                    lo,
                    hi,
                    epsabs=quad.atol,
                    epsrel=quad.rtol,
                    limit=quad.max_subdivisions,
                )
            except integrate.IntegrationWarning as w:
                logger.warning("quadrature on [%g, %g] not converged: %s", lo, hi, w)
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                val, est = integrate.quad(
                    f,
                    lo,
                    hi,
                    epsabs=quad.atol,
                    epsrel=quad.rtol,
                    limit=quad.max_subdivisions,
                )
                flagged = True
        total += val
        err += est
    return total, err, flagged


def _edges(a: float, horizon: float, breakpoints: Sequence[float]) -> list[float]:
    inner = sorted(float(b) for b in breakpoints if a < b < horizon)
    return [a, *inner, horizon]


def integrate_decaying(
    f: Callable[[float], float],
    a: float,
    tail: Callable[[float], float] | None,
    quad: QuadratureSpec | None = None,
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """Integrate a positive, eventually decaying f over [a, ∞).

    Args:
        f: integrand
        a: lower limit
        tail: T ↦ ∫_T^∞ f (analytic policy) or an upper bound for it
            (extended policy)
        quad: tolerances, budget, policy and initial horizon (measured from a)
        breakpoints: interior points where f varies sharply

    Returns:
        QuadratureResult; flagged when the subdivision budget ran out
    """
    if tail is None:
        raise DomainError("integrate_decaying needs a tail term or envelope")
    quad = quad or QuadratureSpec()
    horizon = a + quad.horizon

    finite, err, flagged = integrate_segments(f, _edges(a, horizon, breakpoints), quad)
    if quad.tail_policy is TailPolicy.ANALYTIC:
        tail_value = float(tail(horizon))
        return QuadratureResult(finite + tail_value, err, tail_value, horizon, flagged)

    bound = float(tail(horizon))
    for _ in range(MAX_HORIZON_DOUBLINGS):
        if bound <= max(quad.atol, quad.rtol * abs(finite)):
            break
        new_horizon = a + 2.0 * (horizon - a)
        more, more_err, more_flag = integrate_segments(
            f, _edges(horizon, new_horizon, breakpoints), quad
        )
        finite += more
        err += more_err
        flagged = flagged or more_flag
        horizon = new_horizon
        bound = float(tail(horizon))
    else:
        logger.warning("tail bound %.3g still above tolerance at T=%g", bound, horizon)
        flagged = True
    return QuadratureResult(finite, err, bound, horizon, flagged)


@dataclass(frozen=True)
class SupResult:
    argmax: float
    value: float
    grid_value: float  # best value on the initial grid


def sup_search(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    points: int = SUP_SEARCH_POINTS,
    scale: str = "linear",
    xtol: float = SUP_SEARCH_XTOL,
) -> SupResult:
    """Maximize g on [lo, hi] by a grid scan plus bounded local refinement.

    The refinement runs in the grid's own coordinate (log for scale="log")
    and stops once the bracket is below xtol times the box size.
    """
    if not hi > lo or points < 2:
        raise DomainError("sup_search needs a nonempty box and at least 2 points")
    if scale == "log":
        if not lo > 0:
            raise DomainError("log-scale search needs lo > 0")
        u_lo, u_hi = np.log(lo), np.log(hi)

        def to_x(u):
            return float(np.exp(u))

    elif scale == "linear":
        u_lo, u_hi = lo, hi

        def to_x(u):
            return float(u)

    else:
        raise DomainError(f"unknown grid scale '{scale}'")

    grid = np.linspace(u_lo, u_hi, points)
    values = np.array([g(to_x(u)) for u in grid], dtype=float)
    best = int(np.argmax(values))
    grid_value = float(values[best])

    left = grid[max(best - 1, 0)]
    right = grid[min(best + 1, points - 1)]
    res = optimize.minimize_scalar(
        lambda u: -g(to_x(u)),
        bounds=(left, right),
        method="bounded",
        options={"xatol": xtol * (u_hi - u_lo)},
    )
    refined = -float(res.fun)
    if res.success and refined >= grid_value:
        return SupResult(to_x(res.x), refined, grid_value)
    return SupResult(to_x(grid[best]), grid_value, grid_value)
