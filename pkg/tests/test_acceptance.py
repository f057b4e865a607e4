"""End-to-end numeric checks on the reference spectra."""

import math

import numpy as np
import pytest

from semigroup_lab.admissibility import (
    admissibility_oracle,
    l2_admissibility_constant,
    l2_energy,
    plancherel_check,
)
from semigroup_lab.calculus import decay_curve, weiss_constant
from semigroup_lab.carleson import ColumnFamily, carleson_constant
from semigroup_lab.certificates import (
    admissibility_certificate,
    measure_certificate_inputs,
    measure_faster_decay,
)
from semigroup_lab.errors import HypothesisError
from semigroup_lab.rates import (
    check_log_decay_equivalence,
    fit_rate,
    integral_bound_constant,
    verify_integral_bound,
)
from semigroup_lab.spectra import OperatorSymbol, builtin_family


@pytest.fixture(scope="module")
def harmonic_large():
    return builtin_family("harmonic", n_max=10_000)


class TestDecay:
    def test_t_norm_peaks_at_inverse_e(self, harmonic_large):
        t = np.arange(1.0, 201.0)
        values = t * decay_curve(harmonic_large, OperatorSymbol(a=1.0), t).values
        assert values.max() <= math.exp(-1) + 1e-9
        assert values.max() >= math.exp(-1) - 1e-3

    def test_fit_recovers_synthetic_power_law(self):
        t = np.geomspace(10, 1e4, 50)
        model = fit_rate(t, 2.5 * t**-0.5, "poly")
        assert model.inv_alpha == pytest.approx(0.5, abs=1e-3)
        assert model.to_dict()["constant"] == pytest.approx(2.5, rel=1e-3)


class TestWeiss:
    def test_half_is_borderline_bounded(self, harmonic_large):
        report = weiss_constant(harmonic_large, OperatorSymbol(a=0.5), 2.0)
        assert 0.49 <= report.value <= 0.5
        assert not report.divergent
        assert report.grid_bound_ok

    def test_above_half_is_stable(self, harmonic_large):
        report = weiss_constant(harmonic_large, OperatorSymbol(a=0.6), 2.0)
        assert report.exact.growth <= 1.01
        assert report.grid_bound_ok

    def test_below_half_grows(self, harmonic_large):
        report = weiss_constant(harmonic_large, OperatorSymbol(a=0.4), 2.0)
        assert report.exact.growth == pytest.approx(10**0.1, rel=0.05)
        assert report.grid_bound_ok


class TestAdmissibility:
    @pytest.mark.parametrize(("a", "divergent"), [(0.5, False), (0.4, True), (0.6, False)])
    def test_l2_verdicts(self, harmonic_large, a, divergent):
        report = l2_admissibility_constant(harmonic_large, OperatorSymbol(a=a))
        assert report.divergent is divergent
        assert report.oracle_ok
        if a == 0.5:
            assert 0.49 <= report.value <= 0.5
        if a == 0.4:
            assert report.exact.growth == pytest.approx(10**0.2, rel=0.05)

    def test_oracle_on_random_vectors(self, harmonic):
        rng = np.random.default_rng(0)
        sym = OperatorSymbol(a=0.5)
        for _ in range(100):
            x = np.zeros(harmonic.n_max, dtype=complex)
            x[:16] = rng.normal(size=16) + 1j * rng.normal(size=16)
            exact = l2_energy(harmonic, sym, x)
            oracle = admissibility_oracle(harmonic, sym, 2.0, x)
            assert oracle == pytest.approx(exact, rel=1e-6)

    def test_plancherel_gap(self, harmonic):
        rng = np.random.default_rng(0)
        for _ in range(10):
            x = np.zeros(harmonic.n_max, dtype=complex)
            x[:16] = rng.normal(size=16) + 1j * rng.normal(size=16)
            x /= np.linalg.norm(x)
            for xi in np.geomspace(1e-3, 10, 5):
                assert plancherel_check(harmonic, x, xi).gap < 1e-6


class TestRates:
    @pytest.mark.parametrize("beta", [0.0, 0.5])
    @pytest.mark.parametrize("gamma", [0.0, 1.0, 2.0])
    def test_integral_bound_holds(self, beta, gamma):
        t0 = 2 * integral_bound_constant(beta, gamma, 1e9).threshold
        xi = np.geomspace(1e-8 / t0, 0.99 / t0, 20)
        check = verify_integral_bound(beta, gamma, t0, xi)
        assert check.worst_ratio <= 1

    def test_log_equivalence_on_logdecay(self, logdecay):
        sym = OperatorSymbol(a=1.0)
        bounded = check_log_decay_equivalence(logdecay, sym, 0.0, 1.0)
        assert bounded.resolvent_side.growth < 1.5
        assert bounded.decay_side.growth < 1.5
        divergent = check_log_decay_equivalence(logdecay, sym, 0.0, 2.0)
        assert divergent.resolvent_side.growth > 1.1
        assert divergent.decay_side.growth > 1.1


class TestCertificates:
    def test_certificate_is_sound(self, logdecay):
        spec = logdecay.truncate(30)
        sym_c = OperatorSymbol(a=0.75)
        cert = admissibility_certificate(
            measure_certificate_inputs(spec, sym_c, 0.75, 0.75, math.e**2)
        )
        exact = l2_admissibility_constant(spec, sym_c, run_oracle=False)
        assert cert.m_adm >= exact.value

    def test_small_beta_rejected(self, logdecay):
        with pytest.raises(HypothesisError):
            measure_certificate_inputs(
                logdecay.truncate(30), OperatorSymbol(a=0.75), 0.75, 0.4, math.e**2
            )

    def test_faster_decay_envelope(self, harmonic):
        sym_c = OperatorSymbol(a=1.0)
        result = measure_faster_decay(harmonic, sym_c, 0.5, 1.0)
        t = np.geomspace(1.0, 1e3, 100)
        norms = decay_curve(harmonic, sym_c, t).values
        assert np.all(norms <= result.envelope(t) * (1 + 1e-12))


class TestCarleson:
    @pytest.mark.parametrize("levels", [10, 20])
    def test_verdicts_agree_with_weiss(self, harmonic, levels):
        for alpha in (0.4, 0.5, 0.6):
            cols = ColumnFamily.diagonal(harmonic, alpha + 0.5)
            carleson = carleson_constant(harmonic, cols, 0.5, levels=levels)
            weiss = weiss_constant(harmonic, OperatorSymbol(a=alpha), 2.0)
            assert carleson.divergent is weiss.divergent
