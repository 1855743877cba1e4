# -*- coding: utf-8 -*-
# @Time    : 2026-10-22 13:30
# @Author  : robricks
# @Desc    : location, scatter, MCD, Stahel-Donoho and sign covariance
import itertools
import math

import numpy as np
import pytest

from robricks.core.errors import DegenerateError, DimensionalityError, SingularityError, UnsupportedError
from robricks.lib import linalg
from robricks.multivariate import (
    CovarianceEstimate,
    classical_estimate,
    coordinatewise_median,
    correlation,
    ellipse_polyline,
    mahalanobis,
    make_directions,
    mcd_fit,
    outlyingness,
    reweighted_mcd,
    sign_covariance,
    spatial_median,
    spatial_signs,
    stahel_donoho_fit,
    tolerance_ellipse,
)
from robricks.validate.scenarios import simulate_scenario


def _objective(X, mu):
    return np.linalg.norm(X - mu, axis=1).sum()


def test_coordinatewise_median():
    np.testing.assert_array_equal(coordinatewise_median([[0, 0], [1, 2], [2, 1]]), [1.0, 1.0])
    np.testing.assert_array_equal(coordinatewise_median([[3.0, -1.0]]), [3.0, -1.0])
    X = np.column_stack([np.arange(7.0), np.full(7, 2.5)])
    assert coordinatewise_median(X)[1] == 2.5


def test_spatial_median_examples():
    cross = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    np.testing.assert_allclose(spatial_median(cross), [0.0, 0.0], atol=1e-12)
    same = np.tile([2.0, -3.0], (5, 1))
    np.testing.assert_allclose(spatial_median(same), [2.0, -3.0])


def test_spatial_median_beats_random_candidates(rng):
    X = rng.normal(size=(50, 2)) * [3.0, 1.0]
    mu = spatial_median(X)
    best = _objective(X, mu)
    candidates = X.mean(axis=0) + rng.normal(size=(10_000, 2)) * X.std(axis=0)
    values = np.linalg.norm(X[None, :, :] - candidates[:, None, :], axis=2).sum(axis=1)
    assert best <= values.min() + 1e-6
    assert best <= _objective(X, X.mean(axis=0)) + 1e-9


def test_mahalanobis_against_explicit_inverse():
    C = np.array([[2.0, 0.6], [0.6, 1.0]])
    t = np.array([1.0, -1.0])
    est = CovarianceEstimate(t, C, np.zeros(3), np.ones(3), "fixed")
    X = np.array([[1.0, -1.0], [2.0, 0.5], [-3.0, 4.0]])
    a, b, c = C[0, 0], C[0, 1], C[1, 1]
    inv = np.array([[c, -b], [-b, a]]) / (a * c - b * b)
    expected = [z @ inv @ z for z in X - t]
    d = mahalanobis(X, est)
    np.testing.assert_allclose(d, expected, atol=1e-10)
    assert d[0] == 0.0

    unit = CovarianceEstimate(t, np.eye(2), np.zeros(3), np.ones(3), "fixed")
    np.testing.assert_allclose(mahalanobis(X, unit), ((X - t) ** 2).sum(axis=1))

    flat = CovarianceEstimate(t, np.ones((2, 2)), np.zeros(3), np.ones(3), "fixed")
    with pytest.raises(SingularityError):
        mahalanobis(X, flat)


def test_classical_estimate(rng):
    X = rng.normal(size=(40, 3))
    est = classical_estimate(X)
    np.testing.assert_allclose(est.location, X.mean(axis=0))
    np.testing.assert_allclose(est.scatter, np.cov(X, rowvar=False))
    R = correlation(est)
    np.testing.assert_allclose(np.diag(R), 1.0)
    np.testing.assert_allclose(R, np.corrcoef(X, rowvar=False), atol=1e-12)


def test_mcd_matches_exhaustive_oracle(rng):
    X = rng.normal(size=(10, 2))
    X[:2] += 4.0
    est = mcd_fit(X, h=6, seed=3)
    assert est.meta["exhaustive_starts"]

    def det(H):
        Z = X[list(H)] - X[list(H)].mean(axis=0)
        return np.linalg.det(Z.T @ Z)

    oracle = min(itertools.combinations(range(10), 6), key=det)
    assert math.comb(10, 6) == 210
    assert sorted(est.meta["subset"]) == list(oracle)


def test_mcd_excludes_distant_points(rng):
    clean = rng.normal(size=(30, 2))
    far = 1e6 + rng.normal(size=(10, 2))
    X = np.vstack([clean, far])
    est = mcd_fit(X, seed=11, n_starts=100)
    assert est.meta["h"] == 21
    assert np.all(est.case_weights[30:] == 0)
    assert np.all(est.distances[30:] > 1e6)


def test_mcd_dimensionality():
    with pytest.raises(DimensionalityError):
        mcd_fit(np.ones((3, 3)))


def test_mcd_fig9_correlation():
    scenario = simulate_scenario("fig9", {"n": 300}, seed=9)
    X, mask = scenario.X, scenario.contaminated
    clean = np.corrcoef(X[~mask], rowvar=False)[0, 1]
    robust = correlation(reweighted_mcd(X, seed=1))[0, 1]
    classical = np.corrcoef(X, rowvar=False)[0, 1]
    assert abs(robust - clean) < 0.1
    assert abs(classical - clean) > 0.3


def test_reweighted_mcd_is_consistent_at_the_normal_model(rng):
    X = rng.normal(size=(4000, 3))
    est = reweighted_mcd(X, seed=3)
    np.testing.assert_allclose(np.diag(est.scatter), 1.0, atol=0.1)
    assert est.meta["consistency"] > 1.0
    assert est.meta["kept"] > 0.95 * 4000


def test_mcd_subset_is_affine_equivariant(rng):
    X = rng.normal(size=(30, 2))
    X[:5] += [5.0, -5.0]
    base = sorted(mcd_fit(X, seed=5, n_starts=60).meta["subset"])
    for _ in range(20):
        Q, _ = np.linalg.qr(rng.normal(size=(2, 2)))
        A = Q @ np.diag(rng.uniform(0.5, 2.0, size=2))
        b = rng.normal(size=2) * 10
        moved = mcd_fit(X @ A + b, seed=5, n_starts=60)
        assert sorted(moved.meta["subset"]) == base


def test_mcd_deterministic_across_threads(rng):
    X = rng.normal(size=(80, 3))
    one = mcd_fit(X, seed=2, n_starts=50, threads=1)
    four = mcd_fit(X, seed=2, n_starts=50, threads=4)
    assert one.meta["subset"] == four.meta["subset"]
    np.testing.assert_array_equal(one.scatter, four.scatter)


def test_outlyingness_one_dimension(rng):
    x = rng.normal(size=41)
    X = x[:, None]
    out = outlyingness(X, make_directions(X, seed=4))
    med = np.median(x)
    scale = np.median(np.abs(x - med)) / 0.675
    np.testing.assert_allclose(out, np.abs(x - med) / scale, rtol=1e-12)


def test_stahel_donoho_downweights_far_point():
    g = np.linspace(-1.0, 1.0, 7)
    grid = np.array(list(itertools.product(g, g)))
    X = np.vstack([grid, [1e6, 1e6]])
    est = stahel_donoho_fit(X, seed=8)
    assert est.case_weights[-1] < 1e-3
    assert np.all(est.case_weights[:-1] >= 0.9)
    assert np.abs(est.location).max() < 1.0


def test_stahel_donoho_more_variables_than_rows(rng):
    X = rng.normal(size=(10, 30))
    est = stahel_donoho_fit(X, n_dirs=200, seed=1)
    assert est.meta["distance"] == "outlyingness"
    assert est.distances.shape == (10,)


def test_spatial_signs():
    S = spatial_signs([[3.0, 4.0], [0.0, 0.0], [-1.0, 0.0]], [0.0, 0.0])
    np.testing.assert_allclose(S[0], [0.6, 0.8])
    np.testing.assert_array_equal(S[1], [0.0, 0.0])
    norms = np.linalg.norm(S, axis=1)
    assert set(np.round(norms, 12)) <= {0.0, 1.0}


def test_sign_covariance(rng):
    X = rng.normal(size=(2000, 2)) * [2.0, 1.0]
    est = sign_covariance(X)
    lam = est.meta["eigenvalues"]
    U = est.meta["eigenvectors"]
    assert lam[0] >= lam[1]
    np.testing.assert_allclose(est.scatter, U @ np.diag(lam) @ U.T, atol=1e-12)
    assert linalg.angle(U[:, 0], [1.0, 0.0]) < 5
    np.testing.assert_allclose(lam, [4.0, 1.0], rtol=0.15)

    with pytest.raises(DegenerateError):
        sign_covariance(np.ones((5, 2)))


def test_tolerance_ellipse():
    C = np.array([[2.0, 0.5], [0.5, 1.0]])
    est = CovarianceEstimate(np.array([1.0, 2.0]), C, np.zeros(1), np.ones(1), "fixed")
    ellipse = tolerance_ellipse(est, 0.975)
    assert ellipse.axes[0] >= ellipse.axes[1]
    assert -math.pi / 2 < ellipse.angle <= math.pi / 2
    line = ellipse_polyline(ellipse, 50)
    assert line.shape == (50, 2)
    np.testing.assert_allclose(line[0], line[-1], atol=1e-12)
    np.testing.assert_allclose(mahalanobis(line, est), linalg.chi2_quantile(0.975, 2), rtol=1e-9)

    wide = CovarianceEstimate(np.zeros(3), np.eye(3), np.zeros(1), np.ones(1), "fixed")
    with pytest.raises(UnsupportedError):
        tolerance_ellipse(wide)
