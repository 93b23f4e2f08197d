import math

import mpmath
import numpy as np
import pytest

from mertens_audit.analysis import (
    BOUND_CATALOG,
    EpsilonChoice,
    bound_spec,
    classical_bounds,
    epsilon_for,
    estimate,
    estimate_alpha,
    integral_epsilon,
    inverse_target,
    probabilistic_bound,
    satisfied_fraction,
    sweep_report,
    x_from_theta,
)
from mertens_audit.errors import EpsilonDegenerate, ParameterRangeError, TableRangeError
from mertens_audit.sieve import mertens_at, mertens_range


def test_epsilon_for_binds_n_theta_epsilon():
    choice = epsilon_for(100.4)
    assert choice.n == 100
    assert choice.theta == pytest.approx(0.8, abs=1e-12)
    assert choice.epsilon == pytest.approx(0.2, abs=1e-12)
    assert choice.shifted_integer == 201


def test_x_from_theta_round_trip():
    choice = x_from_theta(50, 0.999)
    assert choice.x == pytest.approx(50.4995)
    assert choice.epsilon == pytest.approx(0.001, abs=1e-12)
    assert choice.epsilon + choice.theta == pytest.approx(1.0, abs=1e-12)
    assert choice.shifted_integer == 101


def test_integrality_holds_for_large_n():
    choice = x_from_theta(10 ** 9, 0.37)
    total = 2 * choice.x + choice.epsilon
    assert total == round(total)


def test_integral_epsilon_covers_upper_half_fractions():
    assert integral_epsilon(7.6) == pytest.approx(0.8, abs=1e-12)
    with pytest.raises(ParameterRangeError):
        epsilon_for(7.6)


@pytest.mark.parametrize("x", [7.5, 8.0, 100.5])
def test_half_integers_are_degenerate(x):
    with pytest.raises(EpsilonDegenerate):
        integral_epsilon(x)


@pytest.mark.parametrize("n, theta", [(5, 0.0), (5, 1.0), (5, 1.5), (0, 0.5)])
def test_x_from_theta_rejects_out_of_range(n, theta):
    with pytest.raises(ParameterRangeError):
        x_from_theta(n, theta)


@pytest.mark.parametrize("theta", [1e-13, 1 - 1e-13])
def test_x_from_theta_near_the_ends_of_the_interval(theta):
    choice = x_from_theta(7, theta)
    assert choice.theta == theta
    assert choice.epsilon == pytest.approx(1 - theta, abs=1e-12)
    assert choice.shifted_integer == 15


def test_epsilon_choice_checks_its_invariants():
    with pytest.raises(ParameterRangeError):
        EpsilonChoice(x=10.3, n=10, theta=0.6, epsilon=0.5)


def test_estimate_values():
    assert estimate(1, 1) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    mp = mpmath.sqrt(100.4) / (mpmath.pi * mpmath.sqrt(0.2) * (100.4 + 0.2))
    assert estimate(100.4, 0.2) == pytest.approx(float(mp), rel=1e-14)
    assert estimate(100.4, 0.2) == pytest.approx(0.0709, rel=1e-3)


@pytest.mark.parametrize("x", [1.5, 100.4, 10 ** 6 + 0.3])
def test_estimate_strictly_decreases_in_epsilon(x):
    values = [estimate(x, eps) for eps in np.linspace(0.01, 0.99, 99)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_estimate_closed_form_self_check():
    for x in (1.5, 10.5, 100.4, 1000.7, 10 ** 6 + 0.3):
        for eps in (0.001, 0.1, 0.5, 0.9, 0.999):
            ratio = estimate(x, eps) * math.pi * math.sqrt(eps) * (x + eps) / math.sqrt(x)
            assert ratio == pytest.approx(1.0, rel=1e-12)


def test_estimate_alpha_is_the_complementary_form():
    assert estimate_alpha(100.4, 0.8) == pytest.approx(estimate(100.4, 0.2), rel=1e-12)
    with pytest.raises(ParameterRangeError):
        estimate_alpha(100.4, 1.0)


def test_probabilistic_bound():
    expected = math.sqrt(6) / math.pi / math.sqrt(0.05) * 10
    assert probabilistic_bound(100, 0.05) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ParameterRangeError):
        probabilistic_bound(100, 0.0)


def test_catalog_names_are_unique():
    names = [spec.name for spec in BOUND_CATALOG]
    assert len(names) == len(set(names))
    with pytest.raises(KeyError):
        bound_spec("nonexistent")


def test_classical_bounds_respect_validity_ranges():
    names = [e.name for e in classical_bounds(100)]
    assert names == ["walfisz", "macleod", "el_marraki_log"]
    names = [e.name for e in classical_bounds(10 ** 6)]
    assert "linear_4345" not in names
    assert "ramare" in names and "el_marraki_sqrt_log" in names and "log_power_11_9" in names


def test_classical_bound_values():
    values = {e.name: e.value for e in classical_bounds(10 ** 6)}
    assert values["macleod"] == pytest.approx((10 ** 6 + 1) / 80 + 5.5)
    assert values["el_marraki_log"] == pytest.approx(0.6437752 * 10 ** 6 / math.log(10 ** 6))
    assert bound_spec("linear_4345").evaluate(3e6) == pytest.approx(3e6 / 4345)


def test_classical_bounds_hold_for_true_value():
    # |M(10^6)| = 212
    evaluations = classical_bounds(10 ** 6, mertens_abs=212)
    assert all(e.holds_for_true_M for e in evaluations)


def test_proven_bounds_hold_across_the_table(trace_table):
    values = mertens_range(trace_table, 2, trace_table.limit)
    for n, m in zip(range(2, trace_table.limit + 1), values.tolist()):
        for evaluation in classical_bounds(n, mertens_abs=abs(m)):
            if not evaluation.parameterized:
                assert evaluation.holds_for_true_M, (n, m, evaluation)


def test_classical_bound_examples():
    values = {e.name: e.value for e in classical_bounds(math.e)}
    assert values["el_marraki_log"] == pytest.approx(float(mpmath.mpf("0.6437752") * mpmath.e), rel=1e-14)
    assert values["el_marraki_log"] == pytest.approx(1.74996, abs=1e-5)
    assert bound_spec("linear_4345").evaluate(4345000) == pytest.approx(1000.0, rel=1e-15)
    expected = mpmath.mpf("0.002969") * 142194 / mpmath.sqrt(mpmath.log(142194))
    assert bound_spec("el_marraki_sqrt_log").evaluate(142194) == pytest.approx(float(expected), rel=1e-14)
    assert float(expected) == pytest.approx(122.56, abs=0.01)


def test_walfisz_constant_is_a_parameter():
    default = {e.name: e for e in classical_bounds(10 ** 6)}["walfisz"]
    tighter = {e.name: e for e in classical_bounds(10 ** 6, walfisz_c=2.0)}["walfisz"]
    assert default.parameterized
    assert tighter.value < default.value


def test_inadmissible_bound_raises():
    with pytest.raises(ParameterRangeError):
        bound_spec("ramare").evaluate(1000)


def test_inverse_target():
    epsilon, target, note = inverse_target(100.4)
    assert epsilon == pytest.approx(0.2, abs=1e-12)
    assert target == pytest.approx(1 / 100.6)
    assert note == ""
    epsilon, target, note = inverse_target(0.5)
    assert epsilon is None and target == 2.0 and note


def test_sweep_report_rows(small_table):
    records = sweep_report(10, 100, 0.999, small_table)
    assert len(records) == 91
    assert [r.n for r in records] == list(range(10, 101))
    for r in records:
        assert r.theta == 0.999
        assert r.mertens == mertens_at(small_table, r.x)
        assert r.mertens_abs == abs(r.mertens)
        assert r.satisfied == (r.mertens_abs < r.estimate)
    assert 0.0 <= satisfied_fraction(records) <= 1.0


def test_sweep_report_edges(small_table):
    assert sweep_report(20, 10, 0.5, small_table) == []
    assert satisfied_fraction([]) == 0.0
    with pytest.raises(TableRangeError):
        sweep_report(1, small_table.limit, 0.5, small_table)
    with pytest.raises(ParameterRangeError):
        sweep_report(1, 10, 1.0, small_table)
