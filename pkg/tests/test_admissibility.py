import math

import numpy as np
import pytest

from semigroup_lab.admissibility import (
    admissibility_from_decay,
    admissibility_oracle,
    decay_bound_from_admissibility,
    finite_time_constant,
    l2_admissibility_constant,
    l2_energy,
    lp_admissibility,
    plancherel_check,
)
from semigroup_lab.calculus import decay_curve, polynomial_decay_constant
from semigroup_lab.errors import DomainError
from semigroup_lab.rates import fit_rate
from semigroup_lab.spectra import (
    OperatorSymbol,
    WeightedIndexSpace,
    builtin_family,
)


def test_l2_divergent_below_half(harmonic):
    report = l2_admissibility_constant(harmonic, OperatorSymbol(a=0.4))
    assert report.divergent
    assert report.exact.growth == pytest.approx(10**0.2, rel=1e-3)
    assert report.argmax == 1000


def test_l2_bounded_above_half(harmonic):
    report = l2_admissibility_constant(harmonic, OperatorSymbol(a=0.6))
    assert not report.divergent
    assert report.argmax == 2
    assert report.value == pytest.approx(4.25**-0.6, rel=1e-12)
    assert report.value == pytest.approx(0.42, abs=1e-2)
    assert report.oracle_ok
    assert report.oracle == pytest.approx(report.value, rel=1e-8)
    assert report.bound_kind == "exact"


def test_l2_without_oracle(harmonic):
    sym = OperatorSymbol(a=1.0)
    report = l2_admissibility_constant(harmonic, sym, run_oracle=False)
    assert report.oracle is None
    assert report.oracle_ok is None
    assert report.to_dict()["M_oracle"] is None


@pytest.mark.parametrize(
    ("alpha", "divergent"), [(0.4, True), (0.5, False), (0.6, False)]
)
def test_jensen_chain_on_powerlaw(alpha, divergent):
    spec = builtin_family("powerlaw", [1.0, 2.0], n_max=1000)
    report = lp_admissibility(spec, None, alpha, 2.0)
    assert report.divergent is divergent
    assert report.oracle_ok


def test_jensen_chain_needs_p_at_least_q():
    spec = builtin_family("harmonic", n_max=4)
    space = WeightedIndexSpace(np.ones(4), 3.0)
    with pytest.raises(DomainError, match="p >= q"):
        lp_admissibility(spec, space, 1.0, 2.0)
    report = lp_admissibility(spec, space, 1.0, 4.0)
    assert report.bound_kind == "upper-bound"


def test_jensen_chain_finite_horizon(single):
    finite = lp_admissibility(single, None, 0.0, 2.0, t1=math.log(2))
    assert finite.value == pytest.approx(3 / 8)
    assert finite.oracle is None


def test_finite_time_constant(single):
    sym = OperatorSymbol()
    assert finite_time_constant(single, sym, 2.0, math.log(2)).value == pytest.approx(
        3 / 8
    )
    assert finite_time_constant(single, sym, 2.0, math.inf).value == 0.5
    with pytest.raises(DomainError):
        finite_time_constant(single, sym, 2.0, 0.0)
    with pytest.raises(DomainError):
        finite_time_constant(single, sym, 0.5, 1.0)


def test_oracle_matches_energy(harmonic):
    rng = np.random.default_rng(7)
    x = np.zeros(harmonic.n_max, dtype=complex)
    x[:8] = rng.normal(size=8) + 1j * rng.normal(size=8)
    sym = OperatorSymbol(a=0.5)
    energy = l2_energy(harmonic, sym, x)
    assert admissibility_oracle(harmonic, sym, 2.0, x) == pytest.approx(energy, rel=1e-8)


def test_oracle_with_p_not_q(single):
    # ∫ (e^{−2t})^{3/2} dt = 1/3
    value = admissibility_oracle(single, OperatorSymbol(), 3.0, np.array([1.0]))
    assert value == pytest.approx(1 / 3, rel=1e-8)


def test_oracle_rejects_bad_vectors(single):
    with pytest.raises(DomainError):
        admissibility_oracle(single, OperatorSymbol(), 2.0, np.array([0.0]))
    with pytest.raises(DomainError):
        admissibility_oracle(single, OperatorSymbol(), 2.0, np.array([1.0, 1.0]))


def test_plancherel_single_mode(single):
    result = plancherel_check(single, np.array([1.0]), 1.0)
    assert result.closed_form == 0.25
    assert result.lhs == pytest.approx(0.25, rel=1e-9)
    assert result.rhs == pytest.approx(0.25, rel=1e-9)
    assert result.gap < 1e-8


def test_plancherel_random_vector(harmonic):
    rng = np.random.default_rng(0)
    x = np.zeros(harmonic.n_max, dtype=complex)
    x[:16] = rng.normal(size=16) + 1j * rng.normal(size=16)
    for xi in (1e-2, 1.0):
        assert plancherel_check(harmonic, x, xi).gap < 1e-7
    with pytest.raises(DomainError):
        plancherel_check(harmonic, x, 0.0)


def test_admissibility_implies_decay(harmonic):
    sym = OperatorSymbol(a=0.6)
    report = l2_admissibility_constant(harmonic, sym, run_oracle=False)
    bound = decay_bound_from_admissibility(report)
    assert bound == pytest.approx(math.sqrt(report.value))
    t = np.geomspace(1e-2, 1e4, 120)
    norms = decay_curve(harmonic, sym, t).values
    assert np.all(np.sqrt(t) * norms <= bound * (1 + 1e-12))


def test_admissibility_from_decay():
    assert admissibility_from_decay(1.0, 1.0, 1.0) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        admissibility_from_decay(1.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        admissibility_from_decay(0.0, 1.0, 1.0)


def test_decay_gives_admissibility_upper_bound(harmonic):
    # ‖(−A)^{−α}T(t)‖ ≤ min(sup|d|, M t^{−α}) integrates to a valid l2 bound
    sym = OperatorSymbol(a=0.75)
    decay = polynomial_decay_constant(harmonic, sym, 0.75)
    sup_norm = float(np.max(sym.moduli(harmonic)))
    bound = admissibility_from_decay(sup_norm, decay.value, 0.75)
    exact = l2_admissibility_constant(harmonic, sym, run_oracle=False)
    assert bound >= exact.value


def _fitted_rate(spec, t):
    curve = decay_curve(spec, OperatorSymbol(a=1.0), t)
    return fit_rate(t, curve.values, "poly", window=(t[0], t[-1])).inv_alpha


@pytest.mark.parametrize(("kappa", "t_max"), [(1.0, 1e3), (2.0, 1e4)])
@pytest.mark.parametrize("eps", [0.05, 0.1])
def test_decay_gives_relaxed_admissibility(kappa, t_max, eps):
    spec = builtin_family("powerlaw", [kappa], n_max=10_000)
    alpha = 1.0 / _fitted_rate(spec, np.geomspace(10, t_max, 41))
    assert alpha == pytest.approx(kappa, rel=0.05)
    relaxed = l2_admissibility_constant(
        spec, OperatorSymbol(a=alpha / 2 + eps), run_oracle=False
    )
    assert not relaxed.divergent
    short = l2_admissibility_constant(
        spec, OperatorSymbol(a=alpha / 2 - 0.1), run_oracle=False
    )
    assert short.divergent


@pytest.mark.parametrize(("kappa", "t_max"), [(1.0, 1e3), (2.0, 1e4)])
@pytest.mark.parametrize("ratio", [0.5, 0.8, 1.25, 2.0])
def test_jensen_bound_finite_iff_rate_fast_enough(kappa, t_max, ratio):
    spec = builtin_family("powerlaw", [kappa], n_max=10_000)
    rate = _fitted_rate(spec, np.geomspace(10, t_max, 41))
    alpha = ratio * kappa
    report = lp_admissibility(spec, None, alpha, 2.0)
    assert (not report.divergent) is (rate >= 1 / alpha)
