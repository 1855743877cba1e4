# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 13:52
# @Author  : robricks
# @Desc    : medians, Mahalanobis distances, classical estimate
import numpy as np
from loguru import logger

from robricks.core.errors import ConvergenceError, InputError, SingularityError
from robricks.lib import linalg
from robricks.multivariate import CovarianceEstimate
from robricks.state import const


def coordinatewise_median(X) -> np.ndarray:
    return np.median(linalg.as_matrix(X), axis=0)


def _objective(X, mu) -> float:
    return float(np.linalg.norm(X - mu, axis=1).sum())


def spatial_median(
    X,
    tol: float = const.WEISZFELD_TOL,
    max_iter: int = const.WEISZFELD_MAX_ITER,
) -> np.ndarray:
    """
    minimiser of sum ||x_i - mu|| by Weiszfeld iterations

    starts at the coordinate-wise median. When the iterate lands on data
    points the step is damped by the coincidence count (Vardi-Zhang), so it
    stays put exactly when that data point is optimal.
    """
    X = linalg.as_matrix(X)
    mu = np.median(X, axis=0)
    scale = max(1.0, float(np.abs(X).max()))

    for iteration in range(1, max_iter + 1):
        diff = X - mu
        d = np.linalg.norm(diff, axis=1)
        hit = d <= 1e-12 * scale
        far = ~hit
        if not far.any():
            return mu

        inv = 1.0 / d[far]
        T = (X[far] * inv[:, None]).sum(axis=0) / inv.sum()
        eta = int(hit.sum())
        if eta:
            R = (diff[far] * inv[:, None]).sum(axis=0)
            r = float(np.linalg.norm(R))
            if r <= eta:
                return mu
            gamma = min(1.0, eta / r)
            updated = (1 - gamma) * T + gamma * mu
        else:
            updated = T

        step = float(np.linalg.norm(updated - mu))
        mu = updated
        if step <= tol * scale:
            logger.debug(f"[spatial_median] converged after {iteration} iterations")
            return mu

    raise ConvergenceError("Weiszfeld iterations did not converge", last=mu, iterations=max_iter)


def mahalanobis(X, est: CovarianceEstimate) -> np.ndarray:
    """squared distances (x_i - t)' C^-1 (x_i - t)"""
    X = linalg.as_matrix(X)
    if X.shape[1] != est.p:
        raise InputError("column count does not match the estimate", columns=X.shape[1])
    return squared_distances(X, est.location, est.scatter)


def squared_distances(X: np.ndarray, location: np.ndarray, scatter: np.ndarray) -> np.ndarray:
    Z = X - location
    inv = linalg.inverse(scatter)
    return np.maximum(np.einsum("ij,jk,ik->i", Z, inv, Z), 0.0)


def classical_estimate(X) -> CovarianceEstimate:
    """sample mean and covariance (n - 1 denominator)"""
    X = linalg.as_matrix(X)
    n, p = X.shape
    if n < 2:
        raise InputError("need at least two rows", n=n)
    mu = X.mean(axis=0)
    C = np.atleast_2d(np.cov(X, rowvar=False))
    try:
        d = squared_distances(X, mu, C)
    except SingularityError:
        d = np.full(n, np.nan)
    return CovarianceEstimate(mu, C, d, np.ones(n), "classical")


def correlation(est: CovarianceEstimate) -> np.ndarray:
    s = np.sqrt(np.diag(est.scatter))
    if np.any(s <= 0):
        raise InputError("scatter has a zero variance")
    return est.scatter / np.outer(s, s)
