import math

import numpy as np
import pytest

from semigroup_lab.calculus import (
    decay_curve,
    log_decay_constant,
    polynomial_decay_constant,
    resolvent_norm,
    resolvent_profile,
    semigroup_norm,
    weiss_constant,
    weiss_factor,
    weiss_from_decay,
)
from semigroup_lab.errors import DomainError
from semigroup_lab.spectra import OperatorSymbol


def test_semigroup_norm_picks_second_mode(harmonic):
    sup = semigroup_norm(harmonic, OperatorSymbol(a=1.0), 1.0)
    assert sup.mode == 2
    assert sup.value == pytest.approx(math.exp(-0.5) / math.sqrt(4.25), rel=1e-12)
    assert sup.value == pytest.approx(0.2942, abs=1e-4)


def test_identity_norm_at_zero(harmonic):
    sup = semigroup_norm(harmonic, OperatorSymbol(), 0.0)
    assert sup.value == 1.0
    assert not sup.divergent
    with pytest.raises(DomainError):
        semigroup_norm(harmonic, OperatorSymbol(), -1.0)


def test_t_times_norm_bounded_by_inverse_e(harmonic):
    t = np.geomspace(1e-2, 1e4, 200)
    curve = decay_curve(harmonic, OperatorSymbol(a=1.0), t)
    assert np.all(t * curve.values <= math.exp(-1) + 1e-9)


def test_decay_curve_grid_checks(harmonic):
    with pytest.raises(DomainError):
        decay_curve(harmonic, OperatorSymbol(), [1.0, 1.0])
    with pytest.raises(DomainError):
        decay_curve(harmonic, OperatorSymbol(), [])
    curve = decay_curve(harmonic, OperatorSymbol(a=1.0), [1.0, 2.0])
    rows = curve.to_rows()
    assert rows[0]["argmax_mode"] == 2
    assert curve.n_tail == 100


def test_decay_curve_csv(tmp_path, harmonic):
    curve = decay_curve(harmonic, OperatorSymbol(a=1.0), [1.0, 10.0])
    path = curve.write_csv(tmp_path / "curve.csv")
    assert path.read_text().splitlines()[0] == "t,norm,argmax_mode,norm_at_n_tail"


def test_resolvent_norm_closed_form(harmonic):
    sup = resolvent_norm(harmonic, OperatorSymbol(a=0.5), 0.5 + 2j)
    assert sup.mode == 2
    assert sup.value == pytest.approx(4.25**-0.25, rel=1e-12)
    with pytest.raises(DomainError):
        resolvent_norm(harmonic, OperatorSymbol(), 1j)


def test_identity_resolvent_profile(harmonic):
    profile = resolvent_profile(harmonic, OperatorSymbol(), [1e-1, 1e-2, 1e-2])
    assert profile.xi.tolist() == [1e-2, 1e-1]
    assert profile.values[0] == pytest.approx(1 / (1e-2 + 1e-3), rel=1e-12)
    assert profile.argmax_modes[0] == 1000
    with pytest.raises(DomainError):
        resolvent_profile(harmonic, OperatorSymbol(), [0.0])


def test_weiss_factor_values():
    assert weiss_factor(1.0, 1) == 1.0
    assert float(weiss_factor(4.0, 2)) == pytest.approx(0.25)
    # stationary point ξ = (p − 1)c
    c, p = 0.3, 3.0
    xi = (p - 1) * c
    assert float(weiss_factor(c, p)) == pytest.approx(xi ** (1 - 1 / p) / (xi + c))


def test_weiss_divergent_below_half(harmonic):
    report = weiss_constant(harmonic, OperatorSymbol(a=0.4), 2.0)
    assert report.divergent
    assert report.exact.growth == pytest.approx(10**0.1, rel=1e-3)
    assert report.grid_bound_ok


def test_weiss_bounded_above_half(harmonic):
    report = weiss_constant(harmonic, OperatorSymbol(a=0.6), 2.0)
    assert not report.divergent
    assert report.exact.mode == 2
    assert report.value == pytest.approx(4.25**-0.3 * math.sqrt(2) / 2, rel=1e-12)
    assert report.value == pytest.approx(0.458, abs=1e-3)
    assert report.grid_bound_ok
    assert report.grid_value <= report.value + 1e-9
    assert report.grid_value > 0.9 * report.value


def test_weiss_p_one_is_boundary(single):
    report = weiss_constant(single, OperatorSymbol(), 1.0)
    assert report.boundary_supremum
    assert report.value == 1.0
    with pytest.raises(DomainError):
        weiss_constant(single, OperatorSymbol(), 0.5)


@pytest.mark.parametrize("a", [0.0, 1.0, 1.5])
def test_weiss_p_one_matches_resolvent_profile(harmonic, a):
    sym = OperatorSymbol(a=a)
    profile = resolvent_profile(harmonic, sym, np.geomspace(1e-9, 1.0, 91))
    report = weiss_constant(harmonic, sym, 1.0)
    assert report.value == pytest.approx(np.max(profile.values), rel=1e-5)


@pytest.mark.parametrize("s", [0.1, 3.0, 250.0])
def test_norms_scale_with_symbol(harmonic, s):
    sym = OperatorSymbol(a=0.75, b=0.25)
    scaled = sym.scaled(s)
    assert semigroup_norm(harmonic, scaled, 2.0).value == pytest.approx(
        s * semigroup_norm(harmonic, sym, 2.0).value, rel=1e-12
    )
    assert resolvent_norm(harmonic, scaled, 0.1 + 3j).value == pytest.approx(
        s * resolvent_norm(harmonic, sym, 0.1 + 3j).value, rel=1e-12
    )
    assert weiss_constant(harmonic, scaled, 2.0).value == pytest.approx(
        s * weiss_constant(harmonic, sym, 2.0).value, rel=1e-12
    )


def test_polynomial_decay_constant(single, harmonic):
    assert polynomial_decay_constant(single, OperatorSymbol(), 1.0).value == (
        pytest.approx(math.exp(-1))
    )
    assert polynomial_decay_constant(harmonic, OperatorSymbol(a=1.0), 0.0).value == (
        pytest.approx(2**-0.5)
    )
    with pytest.raises(DomainError):
        polynomial_decay_constant(single, OperatorSymbol(), -1.0)


def test_log_decay_constant(single):
    sym = OperatorSymbol()
    assert log_decay_constant(single, sym, 0.0, 1.0).value == pytest.approx(
        math.exp(-1)
    )
    # peak of (log t) e^{−t} on t > 1 solves t log t = 1
    value = log_decay_constant(single, sym, 1.0, 1.0).value
    t = np.linspace(1.0, 5.0, 400001)
    assert value == pytest.approx(np.max(np.log(t) * np.exp(-t)), rel=1e-8)
    with pytest.raises(DomainError):
        log_decay_constant(single, sym, 1.0, 0.5)


def test_weiss_from_decay():
    assert weiss_from_decay(1.0, 2.0) == pytest.approx(math.sqrt(math.pi))
    with pytest.raises(DomainError):
        weiss_from_decay(1.0, 1.0)
