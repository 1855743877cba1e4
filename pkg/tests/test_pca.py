# -*- coding: utf-8 -*-
# @Time    : 2026-10-22 15:20
# @Author  : robricks
# @Desc    : classical and robust principal components
import numpy as np
import pytest

from robricks.core.errors import DegenerateError, InputError
from robricks.lib import linalg
from robricks.pca import (
    PCAModel,
    classical_pca,
    covariance_pca,
    maronna_pca,
    outlier_map,
    pp_pca,
    reconstruct,
    spherical_pca,
    unexplained_variance,
)
from robricks.validate.scenarios import simulate_scenario


def gaussian(rng, n, variances):
    return rng.normal(size=(n, len(variances))) * np.sqrt(variances)


def test_classical_pca(rng):
    X = gaussian(rng, 5000, [4.0, 1.0])
    model = classical_pca(X, 1)
    assert linalg.angle(model.loadings[:, 0], [1.0, 0.0]) < 3

    X = rng.normal(size=(30, 2)) @ rng.normal(size=(2, 4))
    full = classical_pca(X, 2)
    np.testing.assert_allclose(full.loadings.T @ full.loadings, np.eye(2), atol=1e-10)
    _, od = reconstruct(full, X)
    np.testing.assert_allclose(od, 0.0, atol=1e-8)
    T = full.scores(X)
    assert abs(np.corrcoef(T, rowvar=False)[0, 1]) < 1e-8

    with pytest.raises(InputError):
        classical_pca(X, 5)


def test_unexplained_variance():
    assert unexplained_variance([4, 3, 2, 1], 2) == pytest.approx(0.3)
    assert unexplained_variance([4, 3, 2, 1], 4) == 0.0
    assert unexplained_variance([4, 3, 2, 1], 0) == 1.0
    with pytest.raises(DegenerateError):
        unexplained_variance([0, 0], 1)
    with pytest.raises(InputError):
        unexplained_variance([1, -1], 1)


def test_reconstruct(rng):
    model = PCAModel(np.array([1.0, 2.0]), np.array([[1.0], [0.0]]), np.array([1.0]), "fixed")
    x_hat, od = reconstruct(model, [3.0, 5.0])
    np.testing.assert_allclose(x_hat, [3.0, 2.0])
    assert od == pytest.approx(3.0)

    x_hat, od = reconstruct(model, model.center)
    np.testing.assert_array_equal(x_hat, model.center)
    assert od == 0.0

    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    full = PCAModel(np.zeros(3), Q, np.ones(3), "fixed")
    x = rng.normal(size=3)
    x_hat, od = reconstruct(full, x)
    np.testing.assert_allclose(x_hat, x, atol=1e-12)
    assert od < 1e-12


def test_score_orthogonal_decomposition(rng):
    X = gaussian(rng, 100, [9.0, 4.0, 1.0, 0.5])
    model = classical_pca(X, 2)
    T = model.scores(X)
    _, od = reconstruct(model, X)
    lhs = ((X - model.center) ** 2).sum(axis=1)
    np.testing.assert_allclose(lhs, (T**2).sum(axis=1) + od**2, rtol=1e-10)


def test_spherical_pca_clean(rng):
    X = gaussian(rng, 5000, [9.0, 1.0])
    model = spherical_pca(X)
    assert linalg.angle(model.loadings[:, 0], [1.0, 0.0]) < 5
    assert 6 <= model.eigenvalues[0] / model.eigenvalues[1] <= 13
    assert np.all(np.diff(model.eigenvalues) <= 0)

    ball = rng.normal(size=(5000, 3))
    lam = spherical_pca(ball).eigenvalues
    assert lam.max() / lam.min() < 1.2


def test_spherical_pca_orthogonal_equivariance(rng):
    X = gaussian(rng, 200, [9.0, 4.0, 1.0])
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    base = spherical_pca(X, 2)
    moved = spherical_pca(X @ Q.T, 2)
    assert np.max(linalg.principal_angles(Q @ base.loadings, moved.loadings)) < 1e-4


def test_robust_pca_under_cluster():
    scenario = simulate_scenario("fig3", {"n": 400}, seed=3)
    X, mask = scenario.X, scenario.contaminated
    truth = scenario.truth["direction"]

    assert linalg.angle(classical_pca(X, 1).loadings[:, 0], truth) > 30
    assert linalg.angle(spherical_pca(X, 1).loadings[:, 0], truth) < 10
    assert linalg.angle(maronna_pca(X, 1).loadings[:, 0], truth) < 10
    assert linalg.angle(covariance_pca(X, 1, "mcd", seed=1).loadings[:, 0], truth) < 10

    clean = classical_pca(X[~mask], 2)
    robust = maronna_pca(X, 2)
    assert np.degrees(np.max(linalg.principal_angles(clean.loadings, robust.loadings))) < 10


def test_maronna_clean_matches_classical(rng):
    X = gaussian(rng, 2000, [16.0, 9.0, 1.0, 0.5, 0.25])
    robust = maronna_pca(X, 2)
    classical = classical_pca(X, 2)
    assert np.degrees(np.max(linalg.principal_angles(robust.loadings, classical.loadings))) < 2
    assert robust.meta["iterations"] >= 1


def test_maronna_exact_subspace(rng):
    B, _ = np.linalg.qr(rng.normal(size=(4, 2)))
    X = rng.normal(size=(50, 2)) * [3.0, 1.0] @ B.T + [1.0, -1.0, 2.0, 0.0]
    model = maronna_pca(X, 2)
    assert np.max(linalg.principal_angles(model.loadings, B)) < 1e-6


def test_pp_pca_variance_matches_classical(rng):
    X = gaussian(rng, 400, [9.0, 4.0, 1.0, 0.25]) @ np.linalg.qr(rng.normal(size=(4, 4)))[0]
    pp = pp_pca(X, 2, "variance")
    classical = classical_pca(X, 2)
    for j in range(2):
        assert linalg.angle(pp.loadings[:, j], classical.loadings[:, j]) < 1
    np.testing.assert_allclose(pp.eigenvalues, classical.eigenvalues, rtol=1e-4)

    one = pp_pca(rng.normal(size=(20, 1)), 1)
    np.testing.assert_array_equal(one.loadings, [[1.0]])


def test_pp_pca_mad_ignores_single_outliers():
    scenario = simulate_scenario("fig2", {"n": 400}, seed=2)
    assert scenario.contaminated.sum() == 3
    model = pp_pca(scenario.X, 1)
    assert linalg.angle(model.loadings[:, 0], [1.0, 1.0]) < 10


def test_outlier_map_flags_cluster():
    scenario = simulate_scenario("fig3", {"n": 200}, seed=4)
    X, mask = scenario.X, scenario.contaminated
    model = maronna_pca(X, 1)
    result = outlier_map(model, X)
    assert np.all(result.flags[mask])
    assert result.flags[~mask].mean() < 0.2
    rows = result.rows()
    assert set(rows[0]) == {"case", "score_distance", "orthogonal_distance", "flag"}
    assert len(rows) == X.shape[0]
