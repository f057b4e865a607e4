import math

import numpy as np
import pytest

from semigroup_lab.admissibility import l2_admissibility_constant
from semigroup_lab.calculus import decay_curve, weiss_constant
from semigroup_lab.certificates import (
    CertificateInputs,
    admissibility_certificate,
    calibrate_moment_constant,
    faster_decay_constant,
    faster_decay_envelope,
    measure_certificate_inputs,
    measure_faster_decay,
    measure_strong_weiss,
    solve_tau_pair,
    strong_weiss_constants,
)
from semigroup_lab.errors import DomainError, HypothesisError
from semigroup_lab.spectra import OperatorSymbol


def test_tau_pair():
    tau1, tau2 = solve_tau_pair()
    assert tau1 == pytest.approx(0.2320, abs=1e-4)
    assert tau2 == pytest.approx(2.678, abs=1e-3)
    for tau in (tau1, tau2):
        assert tau * math.exp(-tau) == pytest.approx(1 / (2 * math.e), abs=1e-14)


def test_tau_intervals_keep_peak_bound():
    # μ t e^{−μ t} > 1/(2e) whenever μ t lies strictly between the pair
    tau1, tau2 = solve_tau_pair()
    s = np.linspace(tau1, tau2, 1001)[1:-1]
    assert np.all(s * np.exp(-s) > 1 / (2 * math.e))


def test_certificate_on_logdecay(logdecay):
    sym_c = OperatorSymbol(a=0.75)
    inputs = measure_certificate_inputs(logdecay.truncate(30), sym_c, 0.75, 0.75, math.e**2)
    cert = admissibility_certificate(inputs)
    assert cert.m_index == 3
    assert cert.tau_m == pytest.approx(30.9, abs=0.05)
    assert cert.mu_m < 1 / (2 * inputs.t0)
    exact = l2_admissibility_constant(logdecay.truncate(30), sym_c, run_oracle=False)
    assert cert.m_adm >= exact.value
    assert set(cert.to_dict()["inputs"]["measured"]) == {"M0", "c", "K"}


def test_certificate_from_supplied_constants():
    inputs = CertificateInputs(
        alpha=1.0, beta=1.0, m0=1.0, t0=10.0, c=1.0, k=1.0, m_ft=lambda t1: 0.5
    )
    cert = admissibility_certificate(inputs)
    log_t0 = math.log(10.0)
    assert cert.m1 == pytest.approx(1 / (1 - 2 / log_t0) + math.exp(-1))
    assert cert.m2 == pytest.approx(log_t0**2 / 2 + cert.m1 / 2)
    assert cert.m_adm == pytest.approx(0.5 + cert.m3)
    assert cert.series > 0


def test_certificate_gates():
    with pytest.raises(HypothesisError, match="β > 1/2"):
        admissibility_certificate(
            CertificateInputs(1.0, 0.5, 1.0, 10.0, 1.0, 1.0, lambda t1: 0.0)
        )
    with pytest.raises(HypothesisError, match="t0"):
        admissibility_certificate(
            CertificateInputs(1.0, 1.0, 1.0, 5.0, 1.0, 1.0, lambda t1: 0.0)
        )
    with pytest.raises(DomainError):
        admissibility_certificate(
            CertificateInputs(1.0, 1.0, -1.0, 10.0, 1.0, 1.0, lambda t1: 0.0)
        )


def test_faster_decay_envelope_dominates(harmonic):
    sym_c = OperatorSymbol(a=1.0)
    result = measure_faster_decay(harmonic, sym_c, 0.5, 1.0)
    assert result.constant == pytest.approx(2 * result.m1.value * result.m2.value)
    t = np.geomspace(0.1, 1e3, 200)
    norms = decay_curve(harmonic, sym_c, t).values
    assert np.all(norms <= result.envelope(t) * (1 + 1e-12))


def test_faster_decay_arguments():
    assert faster_decay_constant(1.0, 1.0, 1.0) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        faster_decay_constant(1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        faster_decay_envelope(1.0, 1.0, 0.0)
    assert faster_decay_envelope(2.0, 1.0, 4.0) == pytest.approx(0.5)


def test_strong_weiss_constants():
    result = strong_weiss_constants(1.0, 4.0, 0.5, 1.0)
    assert result.gamma == pytest.approx(0.25)
    assert result.m3 == pytest.approx(2.0)
    assert result.k == pytest.approx(2 * math.sqrt(math.pi))
    assert result.identity_residual < 1e-12
    with pytest.raises(DomainError):
        strong_weiss_constants(1.0, 1.0, 0.0, 1.0)


def test_strong_weiss_bounds_exact_constant(harmonic):
    sym_c = OperatorSymbol(a=1.0)
    c_moment = calibrate_moment_constant(harmonic, 0.5, 0.25)
    result, m1, m2 = measure_strong_weiss(harmonic, sym_c, 0.5, 1.0, c_moment)
    assert result.gamma == pytest.approx(0.25)
    assert m1.value == pytest.approx(2**-0.25)
    exact = weiss_constant(harmonic, sym_c.times_power(result.gamma), 2.0)
    assert exact.value <= result.k


def test_moment_constant_is_one_for_diagonal(harmonic):
    assert calibrate_moment_constant(harmonic, 0.5, 0.25) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(DomainError):
        calibrate_moment_constant(harmonic, 0.5, 0.75)
