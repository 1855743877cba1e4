# -*- coding: utf-8 -*-
# @Time    : 2026-10-22 18:10
# @Author  : robricks
# @Desc    : bootstrap, cross-validation, trimmed errors and robustness diagnostics
import math

import numpy as np
import pytest

from robricks.core.errors import FitFailure, InputError
from robricks.pls import pls_fit
from robricks.regression import RegressionProblem, lts_fit, m_fit, mm_fit, ols_fit
from robricks.validate import (
    BootstrapConfig,
    CVConfig,
    ContaminationSpec,
    bootstrap,
    bootstrap_predictions,
    breakdown_scan,
    empirical_influence,
    empirical_maxbias,
    monte_carlo_cv,
    one_se_choice,
    simulate_scenario,
    trimmed_rmsep,
    trimmed_spread,
)
from robricks.validate.bootstrap import resample_indices


def line_fit(method, **kwargs):
    def statistic(rows):
        return method(RegressionProblem(rows[:, :-1], rows[:, -1], intercept=True), **kwargs).beta

    return statistic


def test_trimmed_spread():
    x = np.array([1.0, 4.0, 2.0, 8.0, 5.0])
    assert trimmed_spread(x, 0.0) == pytest.approx(np.std(x, ddof=1))
    assert trimmed_spread([1, 1, 1, 1, 1e6], 0.2) == 0.0
    with pytest.raises(InputError):
        trimmed_spread(x, 0.5)
    with pytest.raises(InputError):
        trimmed_spread([], 0.1)


def test_trimmed_spread_below_sd(rng):
    x = rng.normal(size=100_000)
    assert trimmed_spread(x, 0.2) < np.std(x, ddof=1)


def test_trimmed_rmsep():
    assert trimmed_rmsep([1.0, 1.0, 1.0, 100.0], 0.25) == 1.0
    r = np.array([0.5, -2.0, 1.5, 3.0])
    assert trimmed_rmsep(r) == pytest.approx(math.sqrt(np.mean(r**2)))
    assert trimmed_rmsep(-r, 0.25) == trimmed_rmsep(r, 0.25)
    values = [trimmed_rmsep(r, t) for t in (0.0, 0.25, 0.5, 0.75)]
    assert all(b <= a for a, b in zip(values, values[1:]))
    with pytest.raises(InputError):
        trimmed_rmsep(r, 1.0)


def test_bootstrap_constant():
    report = bootstrap(lambda x: 3.0, np.arange(10.0), m=50, seed=1)
    np.testing.assert_array_equal(report.sd, 0.0)
    np.testing.assert_array_equal(report.lower, 3.0)
    np.testing.assert_array_equal(report.upper, 3.0)
    assert report.failures == []


def test_bootstrap_mean_of_binary():
    data = np.zeros(20)
    data[-1] = 1.0
    report = bootstrap(np.mean, data, m=4000, seed=3)
    expected = math.sqrt(0.05 * 0.95 / 20)
    assert report.sd[0] == pytest.approx(expected, rel=0.1)
    assert report.lower[0] <= report.upper[0]


def test_bootstrap_threads_do_not_change_replicates(rng):
    data = rng.normal(size=40)
    one = bootstrap(np.median, data, m=200, seed=9, threads=1)
    four = bootstrap(np.median, data, m=200, seed=9, threads=4)
    np.testing.assert_array_equal(one.estimates, four.estimates)
    assert one.seed == 9


def test_bootstrap_scales(rng):
    data = rng.normal(size=60)
    cfg = BootstrapConfig(m=300, seed=2, scale="percentile", level=0.9)
    report = bootstrap(np.mean, data, cfg)
    np.testing.assert_allclose(report.spread, (report.upper - report.lower) / 2)
    trimmed = bootstrap(np.mean, data, m=300, seed=2, scale="trimmed", trim=0.1)
    assert trimmed.spread[0] < trimmed.sd[0]
    assert report.rows()[0]["seed"] == 2
    with pytest.raises(InputError):
        BootstrapConfig(scale="mad")


def test_bootstrap_joint_rows(line_data):
    X, y = line_data
    report = bootstrap(
        lambda Xb, yb: ols_fit(RegressionProblem(Xb, yb, intercept=True)).beta, (X, y), m=100, seed=4
    )
    assert report.estimates.shape == (100, 3)
    assert np.all(np.abs(report.estimates.mean(axis=0) - [1.0, 2.0, -1.0]) < 0.1)

    preds = bootstrap_predictions(
        lambda Xb, yb: ols_fit(RegressionProblem(Xb, yb, intercept=True)), X, y, X[:3], m=50, seed=4
    )
    assert preds.estimates.shape == (50, 3)


def test_resample_indices():
    rng = np.random.default_rng(0)
    idx = resample_indices(10, rng, n_replace=3)
    assert np.sum(idx != np.arange(10)) <= 3
    assert resample_indices(10, rng).shape == (10,)
    with pytest.raises(InputError):
        resample_indices(10, rng, n_replace=11)


def test_bootstrap_failures():
    data = np.arange(10.0)

    def sometimes(sample):
        if sample[0] == 0:
            raise ValueError("first row drawn first")
        return sample.mean()

    report = bootstrap(sometimes, data, m=200, seed=5)
    assert 0 < len(report.failures) < 100
    assert report.estimates.shape[0] == 200 - len(report.failures)

    def often(sample):
        if 0 in sample:
            raise ValueError("first row present")
        return sample.mean()

    with pytest.raises(FitFailure):
        bootstrap(often, data, m=200, seed=5)


def test_cv_selects_true_rank(rng):
    T = rng.normal(size=(60, 3)) * [3.0, 2.0, 1.0]
    X = T @ rng.normal(size=(3, 8))
    y = T @ [1.0, -1.0, 0.5]
    report = monte_carlo_cv(X, y, lambda k, Xt, yt: pls_fit(Xt, yt, k), range(1, 6), n_splits=20, seed=1, trim=0.0)
    assert report.chosen == 3
    assert report.rmsecv[2] < 1e-8
    assert np.all(report.rmsecv[:2] > 1e-3)
    assert report.failed[:, 3:].all()
    assert len(report.rows()) == 5
    assert report.rows()[2]["chosen"]


def test_cv_is_reproducible(line_data):
    X, y = line_data

    def family(k, Xt, yt):
        return m_fit(RegressionProblem(Xt[:, :k], yt, intercept=True), "huber:1.345")

    cfg = CVConfig(n_splits=10, seed=7, threads=1)
    a = monte_carlo_cv(X, y, family, [1, 2], cfg)
    b = monte_carlo_cv(X, y, family, [1, 2], CVConfig(n_splits=10, seed=7, threads=3))
    np.testing.assert_array_equal(a.errors, b.errors)
    assert a.chosen == 2
    with pytest.raises(InputError):
        monte_carlo_cv(X, y, family, [], cfg)
    with pytest.raises(InputError):
        CVConfig(test_fraction=1.0)


def test_one_se_choice():
    assert one_se_choice([1, 2, 3], np.array([1.0, 0.55, 0.5]), np.array([0.1, 0.1, 0.1])) == 2
    assert one_se_choice([1, 2, 3], np.array([np.nan, 0.9, 0.5]), np.array([np.nan, 0.1, 0.1])) == 3
    with pytest.raises(FitFailure):
        one_se_choice([1], np.array([np.nan]), np.array([np.nan]))


def test_influence_of_mean_and_median(rng):
    curve = empirical_influence(np.mean, np.zeros(10), [5.0])
    assert curve.values[0, 0] == pytest.approx(5.0)

    x = rng.normal(size=21)
    curve = empirical_influence(np.median, x, [10.0, 100.0, 1000.0])
    np.testing.assert_allclose(curve.values[:, 0], curve.values[0, 0])
    assert len(curve.rows()) == 3


def test_influence_of_regression_slopes():
    scenario = simulate_scenario("fig6", seed=6)
    data = np.column_stack([scenario.X, scenario.y])
    grid = [[9.0, v] for v in (10.0, 100.0, 1e4, 1e5)]
    ols = empirical_influence(lambda rows: line_fit(ols_fit)(rows)[1], data, grid)
    huber = empirical_influence(lambda rows: line_fit(m_fit, family="huber:1.345")(rows)[1], data, grid)
    assert abs(ols.values[-1, 0]) > 10 * abs(ols.values[0, 0])
    assert abs(ols.values[-1, 0]) > 1e3
    assert np.abs(huber.values).max() < 100


def test_maxbias_regression():
    scenario = simulate_scenario("fig7", seed=7)
    data = np.column_stack([scenario.X, scenario.y])
    spec = ContaminationSpec(0.4)
    m_grid = [0, 10, 20]
    ols = empirical_maxbias(line_fit(ols_fit), data, spec, [0, 1, 10], trials=5, seed=1)
    lts = empirical_maxbias(line_fit(lts_fit, seed=1), data, spec, m_grid, trials=3, seed=1)
    mm = empirical_maxbias(line_fit(mm_fit, seed=1), data, spec, m_grid, trials=3, seed=1)

    assert ols.bias[0] == 0.0
    assert ols.bias[-1] > 1e3
    assert lts.bias[-1] < 10
    assert mm.bias[-1] < 10
    for curve in (ols, lts, mm):
        assert np.all(np.diff(curve.bias) >= 0)
    np.testing.assert_allclose(lts.fractions, [0.0, 0.2, 0.4])
    assert ols.lower_bound


def test_breakdown_scan(rng):
    scenario = simulate_scenario("fig7", seed=7)
    data = np.column_stack([scenario.X, scenario.y])
    result = breakdown_scan(line_fit(ols_fit), data, ContaminationSpec(), 100.0, m_grid=range(0, 6), seed=2)
    assert result.m == 1
    assert result.value == pytest.approx(1 / 50)

    x = rng.normal(size=21)
    result = breakdown_scan(np.median, x, ContaminationSpec(kind="point-mass", z=1e6), 100.0, trials=2, seed=2)
    assert result.m == 11
    assert result.value >= 0.5 - 1 / 21

    result = breakdown_scan(lambda rows: 1.0, x, ContaminationSpec(kind="point-mass", z=1e6), 1.0, trials=2)
    assert result.flagged and result.value == 1.0

    with pytest.raises(InputError):
        breakdown_scan(np.median, x, ContaminationSpec(), 0.0)


def test_contamination_spec():
    with pytest.raises(InputError):
        ContaminationSpec(1.0)
    with pytest.raises(InputError):
        ContaminationSpec(kind="point-mass")
    data = np.zeros((4, 2))
    moved = ContaminationSpec(kind="cluster-shift", shift=[1.0, -1.0]).replacements(data, np.random.default_rng(0))
    np.testing.assert_array_equal(moved, np.tile([1.0, -1.0], (4, 1)))
    far = ContaminationSpec().replacements(data, np.random.default_rng(0))
    assert np.all((far[:, 0] >= 0) & (far[:, 0] <= 10))
    assert np.all(far[:, 1] >= 1e4)


def test_scenarios():
    a = simulate_scenario("fig9", {"n": 100, "eps": 0.2}, seed=7)
    b = simulate_scenario("fig9-mcd", {"n": 100, "eps": 0.2}, seed=7)
    assert a.name == "fig9-mcd"
    assert a.contaminated.sum() == 20
    np.testing.assert_array_equal(a.X, b.X)

    lda = simulate_scenario("fig10", {"n": 50}, seed=8)
    assert lda.name == "fig8-lda"
    assert lda.contaminated[:50].sum() == 5
    assert not lda.contaminated[50:].any()
    np.testing.assert_array_equal(lda.labels[lda.contaminated], 0)

    with pytest.raises(InputError):
        simulate_scenario("fig11")
    with pytest.raises(InputError):
        simulate_scenario("fig9", {"bogus": 1})
