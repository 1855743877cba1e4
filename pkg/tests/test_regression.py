# -*- coding: utf-8 -*-
# @Time    : 2026-10-22 10:02
# @Author  : robricks
# @Desc    : least squares, L1, M, subsampling and MM regression
import itertools
import math

import numpy as np
import pytest

from robricks.core.errors import DimensionalityError, InputError, SingularityError
from robricks.lib import linalg
from robricks.regression import (
    RegressionProblem,
    default_h,
    l1_fit,
    lms_fit,
    lts_fit,
    m_fit,
    mm_fit,
    ols_fit,
    regression_diagnostics,
    required_subsamples,
    s_fit,
    scale_min_fit,
)


def test_ols_examples(rng):
    fit = ols_fit(RegressionProblem(np.array([[0.0], [1.0], [2.0]]), [0.0, 1.0, 2.0], intercept=True))
    np.testing.assert_allclose(fit.beta, [0.0, 1.0], atol=1e-12)

    X = rng.normal(size=(20, 3))
    y = rng.normal(size=20)
    fit = ols_fit(RegressionProblem(X, y))
    oracle = np.linalg.inv(X.T @ X) @ X.T @ y
    np.testing.assert_allclose(fit.beta, oracle, atol=1e-8)
    assert np.abs(X.T @ fit.residuals).max() <= 1e-8 * np.linalg.norm(X) * np.linalg.norm(y)
    np.testing.assert_array_equal(fit.residuals, y - X @ fit.beta)


def test_ols_rank_deficient():
    X = np.column_stack([np.arange(5.0), 2 * np.arange(5.0)])
    with pytest.raises(SingularityError):
        ols_fit(RegressionProblem(X, np.arange(5.0)))


def test_l1_examples(rng):
    y = np.array([3.0, 1.0, 7.0, 2.0, 100.0])
    fit = l1_fit(RegressionProblem(np.empty((5, 0)), y, intercept=True))
    assert fit.beta[0] == pytest.approx(np.median(y), abs=1e-5)

    x = np.arange(10.0)
    y = 1.0 + 0.5 * x
    y[3] += 30.0
    fit = l1_fit(RegressionProblem(x[:, None], y, intercept=True))
    np.testing.assert_allclose(fit.beta, [1.0, 0.5], atol=1e-5)


def test_m_fit_huber_limit_is_ols(line_data):
    X, y = line_data
    problem = RegressionProblem(X, y, intercept=True)
    fit = m_fit(problem, "huber:1e6")
    np.testing.assert_allclose(fit.beta, ols_fit(problem).beta, atol=1e-6)


def test_m_fit_exact_data():
    X = np.arange(12.0).reshape(6, 2)
    X[:, 1] = X[:, 1] ** 2
    y = X @ np.array([1.5, -0.5])
    fit = m_fit(RegressionProblem(X, y), "huber")
    np.testing.assert_allclose(fit.beta, [1.5, -0.5], atol=1e-8)
    assert fit.iterations == 1


def test_m_fit_bounded_needs_start(line_data):
    X, y = line_data
    with pytest.raises(InputError):
        m_fit(RegressionProblem(X, y, intercept=True), "bisquare:4.685")


def test_m_fit_objective_never_increases(line_data):
    X, y = line_data
    y = y.copy()
    y[:5] += 20
    fit = m_fit(RegressionProblem(X, y, intercept=True), "huber:1.345")
    trace = np.array(fit.meta["objective_trace"])
    assert np.all(np.diff(trace) <= 1e-9 * np.abs(trace[:-1]).max())
    assert fit.case_weights[:5].max() < 1


def test_required_subsamples():
    assert required_subsamples(5, 0.2, 0.01) == 12
    assert required_subsamples(5, 0.2, 0.01, exact=False) == 15
    assert required_subsamples(3, 0.0, 0.01) == 1
    assert required_subsamples(3, 0.5, 0.999999) == 1

    # probability oracle: at least one clean subset with probability >= 1 - gamma
    for p, eps in [(2, 0.3), (5, 0.2), (8, 0.5)]:
        N = required_subsamples(p, eps, 0.01)
        clean = (1 - eps) ** p
        assert 1 - (1 - clean) ** N >= 0.99
        assert 1 - (1 - clean) ** (N - 1) < 0.99 or N == 1


def test_default_h():
    assert default_h(10, 2) == 6


def test_subsampling_exact_data():
    x = np.arange(15.0)
    y = 2.0 - 3.0 * x
    fit = lts_fit(RegressionProblem(x[:, None], y, intercept=True), seed=1)
    np.testing.assert_allclose(fit.beta, [2.0, -3.0], atol=1e-9)
    assert fit.sigma.value == pytest.approx(0.0, abs=1e-9)
    lms = lms_fit(RegressionProblem(x[:, None], y, intercept=True), seed=1)
    np.testing.assert_allclose(lms.beta, [2.0, -3.0], atol=1e-9)


def test_subsampling_needs_n_above_p():
    with pytest.raises(DimensionalityError):
        lts_fit(RegressionProblem(np.ones((2, 2)), [1.0, 2.0]))


def _lts_oracle(x, y, h):
    """brute force over every h-subset"""
    Z = np.column_stack([np.ones_like(x), x])
    best = math.inf
    for H in itertools.combinations(range(len(y)), h):
        H = list(H)
        beta = np.linalg.lstsq(Z[H], y[H], rcond=None)[0]
        r2 = np.sort((y - Z @ beta) ** 2)[:h]
        best = min(best, math.sqrt(r2.sum() / len(y)))
    return best


def test_lts_matches_exhaustive_oracle(rng):
    x = rng.uniform(0, 10, size=12)
    y = 1.0 + 2.0 * x + 0.3 * rng.normal(size=12)
    y[[2, 5, 9]] += [40.0, -35.0, 50.0]
    fit = lts_fit(RegressionProblem(x[:, None], y, intercept=True), N="all")
    assert fit.meta["exhaustive"]
    assert fit.sigma.value == pytest.approx(_lts_oracle(x, y, default_h(12, 2)), rel=1e-8)
    assert fit.case_weights[[2, 5, 9]].sum() == 0


def test_randomized_fits_are_deterministic(line_data):
    X, y = line_data
    problem = RegressionProblem(X, y, intercept=True)
    a = mm_fit(problem, seed=3, threads=1)
    b = mm_fit(problem, seed=3, threads=4)
    np.testing.assert_array_equal(a.beta, b.beta)
    np.testing.assert_array_equal(
        s_fit(problem, seed=9).beta, scale_min_fit(problem, "s", seed=9).beta
    )


def test_mm_records_tuning(line_data):
    X, y = line_data
    fit = mm_fit(RegressionProblem(X, y, intercept=True), seed=2)
    assert fit.meta["k"] == 3.44
    assert fit.meta["efficiency"] == 0.85
    assert fit.method == "mm"


def test_mm_scale_is_consistent_at_the_normal_model(rng):
    x = rng.normal(size=2000)
    y = 1.0 + 2.0 * x + rng.normal(size=2000)
    fit = mm_fit(RegressionProblem(x[:, None], y, intercept=True), seed=4)
    assert fit.meta["c0"] == pytest.approx(1.5476, abs=1e-3)
    assert fit.sigma.value == pytest.approx(1.0, abs=0.08)
    assert mm_fit(RegressionProblem(x[:, None], y, intercept=True), seed=4, c0=1.65).meta["c0"] == 1.65


def test_mm_exact_data():
    x = np.linspace(0, 5, 20)
    fit = mm_fit(RegressionProblem(x[:, None], 4.0 + x, intercept=True), seed=0)
    np.testing.assert_allclose(fit.beta, [4.0, 1.0], atol=1e-8)


def test_equivariance(line_data):
    X, y = line_data
    y = y.copy()
    y[:6] += 15.0
    problem = RegressionProblem(X, y, intercept=True)
    base = mm_fit(problem, seed=5)

    scaled = mm_fit(problem.replace(y=-3.0 * y), seed=5)
    np.testing.assert_allclose(scaled.beta, -3.0 * base.beta, rtol=1e-6, atol=1e-8)

    A = np.array([[2.0, 0.5], [-1.0, 1.5]])
    moved = mm_fit(problem.replace(X=X @ A), seed=5)
    np.testing.assert_allclose(moved.beta[1:], np.linalg.solve(A, base.beta[1:]), rtol=1e-6, atol=1e-8)
    np.testing.assert_allclose(moved.beta[0], base.beta[0], rtol=1e-6, atol=1e-8)

    l1 = l1_fit(problem)
    np.testing.assert_allclose(l1_fit(problem.replace(y=2.0 * y)).beta, 2.0 * l1.beta, rtol=1e-5, atol=1e-6)


def test_diagnostics_classify_cases(rng):
    x = rng.normal(size=(50, 2))
    y = x @ [1.0, -1.0] + 0.2 * rng.normal(size=50)
    x[0] = [8.0, 8.0]
    y[0] = -20.0  # bad leverage
    x[1] = [-8.0, 8.0]
    y[1] = -16.0  # good leverage
    y[2] += 10.0  # vertical
    problem = RegressionProblem(x, y, intercept=True)
    fit = mm_fit(problem, seed=4)
    diag = regression_diagnostics(fit, x, seed=4)
    assert diag.kind[0] == "bad-leverage"
    assert diag.kind[1] == "good-leverage"
    assert diag.kind[2] == "vertical"
    assert (diag.kind == "regular").sum() >= 40
    assert diag.residual_cutoff == 2.5
    assert diag.leverage_cutoff == pytest.approx(math.sqrt(linalg.chi2_quantile(0.975, 2)))
    assert len(diag.rows()) == 50


@pytest.mark.slow
def test_mm_and_lts_efficiency():
    rng = np.random.default_rng(7)
    ols, mm, lts = [], [], []
    for rep in range(500):
        X = rng.normal(size=(200, 5))
        y = rng.normal(size=200)
        problem = RegressionProblem(X, y, intercept=True)
        ols.append(ols_fit(problem).beta[1:])
        mm.append(mm_fit(problem, seed=rep).beta[1:])
        lts.append(lts_fit(problem, seed=rep).beta[1:])
    v_ols = np.var(ols, axis=0).mean()
    assert v_ols / np.var(mm, axis=0).mean() == pytest.approx(0.85, abs=0.05)
    assert v_ols / np.var(lts, axis=0).mean() == pytest.approx(0.07, abs=0.04)
