# -*- coding: utf-8 -*-
# @Time    : 2026-10-22 10:40
# @Author  : robricks
# @Desc    : lasso, elastic net and sparse LTS
import numpy as np
import pytest

from robricks.core.errors import InputError
from robricks.regression import RegressionProblem, enet_fit, lasso_fit, sparse_lts_fit
from robricks.regression.sparse import soft


def _orthonormal(rng, n=30, p=5):
    Q, _ = np.linalg.qr(rng.normal(size=(n, p)))
    return Q


def test_lasso_orthonormal_closed_form(rng):
    X = _orthonormal(rng)
    y = X @ [3.0, -2.0, 0.5, 0.0, 0.1] + 0.05 * rng.normal(size=30)
    lam = 1.2
    fit = lasso_fit(RegressionProblem(X, y), lam)
    np.testing.assert_allclose(fit.beta, soft(X.T @ y, lam / 2), atol=1e-8)


def test_enet_orthonormal_closed_form(rng):
    X = _orthonormal(rng)
    y = X @ [3.0, -2.0, 0.5, 0.0, 0.1]
    lam, mu = 1.0, 0.5
    fit = enet_fit(RegressionProblem(X, y), lam, mu)
    np.testing.assert_allclose(fit.beta, soft(X.T @ y, lam / 2) / (1 + mu), atol=1e-8)


def test_lasso_zero_above_kkt_bound(line_data):
    X, y = line_data
    Xc, yc = X - X.mean(axis=0), y - y.mean()
    bound = 2 * np.abs(Xc.T @ yc).max()
    fit = lasso_fit(RegressionProblem(X, y, intercept=True), bound * 1.001)
    np.testing.assert_array_equal(fit.coef, 0.0)
    assert fit.beta[0] == pytest.approx(y.mean())
    assert fit.meta["nonzeros"] == 0
    below = lasso_fit(RegressionProblem(X, y, intercept=True), bound * 0.9)
    assert below.meta["nonzeros"] >= 1


def test_lasso_zero_penalty_is_ols(line_data):
    X, y = line_data
    problem = RegressionProblem(X, y, intercept=True)
    ols = np.linalg.lstsq(problem.design, y, rcond=None)[0]
    np.testing.assert_allclose(lasso_fit(problem, 0.0).beta, ols, atol=1e-6)


def test_negative_penalty():
    with pytest.raises(InputError):
        lasso_fit(RegressionProblem(np.eye(3), [1.0, 2.0, 3.0]), -1.0)


def test_sparse_lts_support_under_outliers():
    rng = np.random.default_rng(3)
    n, p = 80, 8
    X = rng.normal(size=(n, p))
    beta = np.array([3.0, 3.0, 3.0, 0, 0, 0, 0, 0])
    y = X @ beta + 0.5 * rng.normal(size=n)
    bad = np.arange(16)
    X[bad, 5] = 5.0
    y[bad] = 40.0

    problem = RegressionProblem(X, y, intercept=True)
    robust = sparse_lts_fit(problem, lam=0.5, seed=1, n_starts=50)
    support = set(robust.meta["support"])
    assert {0, 1, 2} <= support
    assert len(support - {0, 1, 2}) <= 2
    assert 5 not in support
    assert robust.case_weights[bad].sum() == 0

    plain = lasso_fit(problem, lam=n * 0.5)
    assert 5 in set(plain.meta["support"])


def test_sparse_lts_deterministic(line_data):
    X, y = line_data
    problem = RegressionProblem(X, y, intercept=True)
    a = sparse_lts_fit(problem, lam=0.1, seed=8, n_starts=20, threads=1)
    b = sparse_lts_fit(problem, lam=0.1, seed=8, n_starts=20, threads=3)
    np.testing.assert_array_equal(a.beta, b.beta)
