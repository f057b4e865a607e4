import numpy as np
import pytest

from semigroup_lab.config import Config
from semigroup_lab.truncation import TruncationPolicy, growth_ratio, mode_sup


def test_growing_values_are_divergent():
    sup = mode_sup(np.arange(1.0, 21.0))
    assert sup.value == 20.0
    assert sup.mode == 20
    assert (sup.n_tail, sup.value_tail) == (2, 2.0)
    assert sup.growth == pytest.approx(10.0)
    assert sup.divergent


def test_ties_pick_smallest_mode():
    sup = mode_sup(np.ones(50))
    assert sup.mode == 1
    assert sup.growth == 1.0
    assert not sup.divergent


def test_tail_is_at_least_one_mode():
    sup = mode_sup(np.array([0.5, 2.0, 1.0]))
    assert sup.n_tail == 1
    assert sup.value_tail == 0.5


def test_growth_ratio_edge_cases():
    assert growth_ratio(0.0, 0.0) == 1.0
    assert growth_ratio(1.0, 0.0) == float("inf")
    assert growth_ratio(3.0, 2.0) == 1.5


def test_empty_values_rejected():
    with pytest.raises(ValueError):
        mode_sup(np.array([]))


def test_policy_validation_and_config():
    with pytest.raises(ValueError):
        TruncationPolicy(divisor=1)
    with pytest.raises(ValueError):
        TruncationPolicy(ratio=0.5)
    policy = TruncationPolicy.from_config(Config.from_defaults())
    assert policy == TruncationPolicy(1.01, 10)


def test_policy_threshold_controls_verdict():
    values = np.concatenate([np.ones(10), 1.2 * np.ones(90)])
    assert TruncationPolicy().reduce(values).divergent
    assert not TruncationPolicy(ratio=1.5).reduce(values).divergent
    assert TruncationPolicy(divisor=2).reduce(values).n_tail == 50
