# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 16:52
# @Author  : robricks
# @Desc    : eigen-decomposition PCA on a (robust) covariance
from typing import Optional

import numpy as np

from robricks.core import events
from robricks.core.errors import InputError
from robricks.lib import linalg
from robricks.pca import PCAModel


def _check_q(q, n, p) -> int:
    limit = min(n - 1, p)
    if q is None:
        return limit
    if not 1 <= q <= limit:
        raise InputError(f"q must lie in [1, {limit}]", q=q)
    return int(q)


@events.fitting("pca")
def classical_pca(X, q: Optional[int] = None) -> PCAModel:
    """mean center, top-q eigenvectors of the sample covariance"""
    X = linalg.as_matrix(X)
    n, p = X.shape
    q = _check_q(q, n, p)
    mu = X.mean(axis=0)
    values, vectors = linalg.eigh_desc(np.atleast_2d(np.cov(X, rowvar=False)))
    values = np.maximum(values, 0.0)
    return PCAModel(mu, vectors[:, :q], values[:q], "classical", meta={"all_eigenvalues": values})


@events.fitting("covariance-pca")
def covariance_pca(
    X,
    q: Optional[int] = None,
    estimator: str = "mcd",
    seed: Optional[int] = None,
) -> PCAModel:
    """
    eigenvectors of a robust scatter plugged in for the covariance

    :param estimator: mcd / stahel-donoho / sign / classical
    """
    from robricks import multivariate

    X = linalg.as_matrix(X)
    n, p = X.shape
    q = _check_q(q, n, p)
    if estimator == "mcd":
        est = multivariate.mcd_fit(X, seed=seed)
    elif estimator == "stahel-donoho":
        est = multivariate.stahel_donoho_fit(X, seed=seed)
    elif estimator == "sign":
        est = multivariate.sign_covariance(X)
    elif estimator == "classical":
        est = multivariate.classical_estimate(X)
    else:
        raise InputError(f"unknown estimator: {estimator}", estimator=estimator)
    values, vectors = linalg.eigh_desc(est.scatter)
    values = np.maximum(values, 0.0)
    return PCAModel(
        est.location,
        vectors[:, :q],
        values[:q],
        f"covariance:{estimator}",
        meta={"all_eigenvalues": values},
    )
