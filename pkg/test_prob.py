from fractions import Fraction

import numpy as np
import pytest

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.actions import alternating, cyclic, psl2_projective, symmetric
from saxl_graphs.bases import base_size
from saxl_graphs.group import PermGroup
from saxl_graphs.perm import Permutation
from saxl_graphs.prob import (
    common_neighbour_thresholds,
    fixed_point_ratio,
    half_valency_predicted,
    prob_report,
    q_exact,
    q_mc,
    qhat,
    valency_bound_holds,
)
from saxl_graphs.saxl import saxl_graph


def test_exact_and_bound_for_s3():
    group = symmetric(3)
    assert q_exact(group, 2) == Fraction(1, 3)
    # three transpositions with one fixed point each, over 3^2 pairs
    assert qhat(group, 2) == Fraction(1, 3)
    assert q_exact(group, 1) == 1


@pytest.mark.parametrize("seed", range(3))
def test_bound_dominates_exact_value(seed):
    rng = np.random.default_rng(seed)
    for _ in range(20):
        n = int(rng.choice([4, 5, 6]))
        group = PermGroup([Permutation(rng.permutation(n)), Permutation(rng.permutation(n))])
        for k in (1, 2, 3):
            assert q_exact(group, k) <= qhat(group, k)


def test_regular_group():
    assert q_exact(cyclic(5), 1) == 0
    assert qhat(cyclic(5), 1) == 0
    thresholds = common_neighbour_thresholds(1, q_exact(cyclic(5), 1))
    assert thresholds.t is None and thresholds.r is None
    assert thresholds.diameter_at_most_two


def test_fixed_point_ratio():
    assert fixed_point_ratio(symmetric(4), Permutation.from_cycles(4, [(0, 1)])) == Fraction(1, 2)
    with pytest.raises(sx_e.NotInGroup):
        fixed_point_ratio(alternating(4), Permutation.from_cycles(4, [(0, 1)]))


@pytest.mark.parametrize(
    "k, q, t, r",
    [
        (2, Fraction(1, 3), 2, 2),
        (2, Fraction(1, 4), 3, 3),
        (3, 0.3, 3, 4),
        (4, Fraction(1, 10), 9, 24),
        (2, Fraction(1, 2), 1, 1),
    ],
)
def test_thresholds(k, q, t, r):
    thresholds = common_neighbour_thresholds(k, q)
    assert (thresholds.t, thresholds.r) == (t, r)
    assert thresholds.diameter_at_most_two == (r >= 2)
    assert thresholds.valency_fraction == 1 - Fraction(1, r)
    assert thresholds.valency_bound(100) == 100 * (1 - Fraction(1, r))


def test_thresholds_reject_invalid_values():
    for q in (1, Fraction(3, 2), -0.1):
        with pytest.raises(sx_e.InvalidProbability):
            common_neighbour_thresholds(2, q)


def test_pair_threshold_forces_small_diameter():
    group = psl2_projective(7)
    assert base_size(group).b == 3
    q = q_exact(group, 3)
    assert q == Fraction(11, 32)
    thresholds = common_neighbour_thresholds(3, q)
    assert (thresholds.t, thresholds.r) == (2, 2)
    assert thresholds.diameter_at_most_two
    assert saxl_graph(group, 3).connectivity().diameter == 1


def test_half_valency_prediction():
    assert half_valency_predicted(2, Fraction(1, 3))
    assert not half_valency_predicted(3, 0.8)


def test_valency_bound_against_graph():
    for group in (symmetric(4), alternating(5), psl2_projective(7, "pgl")):
        b = base_size(group).b
        assert valency_bound_holds(saxl_graph(group, b), q_exact(group, b))


def test_monte_carlo():
    group = symmetric(4)
    exact = float(q_exact(group, 3))
    estimate = q_mc(group, 3, samples=4000, seed=5)
    assert estimate.samples == 4000
    assert abs(estimate.value - exact) < 0.05
    assert estimate.low <= estimate.value <= estimate.high
    again = q_mc(group, 3, samples=4000, seed=5)
    assert again.failures == estimate.failures


def test_monte_carlo_extremes():
    always = q_mc(symmetric(5), 2, samples=100)
    assert always.failures == 100 and always.value == 1.0
    never = q_mc(cyclic(5), 1, samples=100)
    assert never.failures == 0 and never.low == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(sx_e.InvalidProbability):
        q_mc(cyclic(5), 1, samples=0)


def test_caps():
    cfg.override(tuple_cap=10, group_order_cap=10)
    with pytest.raises(sx_e.CapExceeded):
        q_exact(symmetric(4), 2)
    with pytest.raises(sx_e.CapExceeded):
        qhat(symmetric(4), 2)


def test_report_falls_back_to_bound():
    cfg.override(tuple_cap=10)
    report = prob_report(symmetric(4), 3, samples=200)
    assert report.q_exact is None and "q_exact" in report.skipped
    assert report.qhat == qhat(symmetric(4), 3)
    assert report.q_mc.samples == 200
    if report.qhat < 1:
        assert report.thresholds is not None
    else:
        assert "thresholds" in report.skipped


def test_report_uses_exact_value():
    report = prob_report(symmetric(3), 2, samples=50)
    assert report.q_exact == Fraction(1, 3)
    assert report.thresholds.t == 2
    assert not report.skipped


def test_bound_does_not_depend_on_threads():
    group = psl2_projective(9, "pgl")
    single = qhat(group, 3)
    cfg.override(threads=4)
    assert qhat(group, 3) == single
