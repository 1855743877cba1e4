# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 13:40
# @Author  : robricks
# @Desc    : group locations, scatters and their pooling
from typing import Optional

import numpy as np

from robricks import multivariate
from robricks.core import events
from robricks.core.errors import DimensionalityError, InputError
from robricks.discriminant import DiscriminantModel, GroupedData, check_priors
from robricks.lib import linalg
from robricks.multivariate import CovarianceEstimate

ESTIMATORS = ("classical", "mcd", "mcd-reweighted", "spc-cov", "stahel-donoho")
# estimators whose distances are chi-square calibrated, their groups count only the rows they keep
TRIMMING = ("mcd", "mcd-reweighted")
POOLINGS = ("per-group", "pooled-average", "center-then-joint")


def estimate(X, estimator: str, seed: Optional[int] = None) -> CovarianceEstimate:
    if estimator == "classical":
        return multivariate.classical_estimate(X)
    if estimator == "mcd":
        return multivariate.mcd_fit(X, seed=seed)
    if estimator == "mcd-reweighted":
        return multivariate.reweighted_mcd(X, seed=seed)
    if estimator == "spc-cov":
        return multivariate.sign_covariance(X)
    if estimator == "stahel-donoho":
        return multivariate.stahel_donoho_fit(X, seed=seed)
    raise InputError(f"unknown estimator: {estimator}", estimator=estimator)


def effective_sizes(fits, sizes: np.ndarray, estimator: str, quantile: float = 0.975) -> np.ndarray:
    """
    rows per group that the estimator treats as regular: distance within
    chi2_p(quantile) for the MCD family, the label counts otherwise
    """
    if estimator not in TRIMMING:
        return sizes.astype(float)
    cutoff = linalg.chi2_quantile(quantile, fits[0].p)
    return np.array([float(np.sum(f.distances <= cutoff)) for f in fits])


@events.fitting("groups")
def estimate_groups(
    data: GroupedData,
    estimator: str = "classical",
    pooling: str = "pooled-average",
    priors=None,
    seed: Optional[int] = None,
) -> DiscriminantModel:
    """
    group means and scatters from one location/scatter estimator

    - per-group: one scatter per group, a QDA model
    - pooled-average: sum (n_j - 1) S_j / (n - g), an LDA model
    - center-then-joint: scatter of all rows centered at their group
      location, an LDA model

    for the MCD estimators n_j counts only the rows within the 97.5%
    chi-square cutoff of their group, so rows carrying another group's
    label drop out of the priors and the pooling weights too

    :param priors: defaults to n_j / n
    """
    if pooling not in POOLINGS:
        raise InputError(f"unknown pooling: {pooling}", pooling=pooling)
    sizes = data.sizes
    if np.any(sizes <= data.p):
        raise DimensionalityError(
            "every group needs more rows than variables, use a reducing pipeline",
            sizes=sizes.tolist(),
            p=data.p,
        )

    fits = [estimate(data.group(j), estimator, seed) for j in range(data.g)]
    means = np.array([f.location for f in fits])
    scatters = np.array([f.scatter for f in fits])
    effective = effective_sizes(fits, sizes, estimator)
    if np.any(effective < 2):
        raise DimensionalityError("a group keeps fewer than two rows", effective=effective.tolist())
    priors = check_priors(priors, effective)
    meta = {"estimator": estimator, "pooling": pooling, "sizes": sizes, "effective_sizes": effective}

    if pooling == "per-group":
        for j, S in enumerate(scatters):
            linalg.inverse(S, f"scatter of group {j}")
        return DiscriminantModel("QDA", data.classes, priors, means, scatters=scatters, meta=meta)

    if pooling == "pooled-average":
        n, g = effective.sum(), data.g
        if n <= g:
            raise DimensionalityError("pooling needs more rows than groups", n=n, g=g)
        pooled = np.einsum("j,jkl->kl", effective - 1.0, scatters) / (n - g)
    else:
        Z = data.X - means[data.labels]
        pooled = estimate(Z, estimator, seed).scatter
    pooled = linalg.symmetrize(pooled)
    linalg.inverse(pooled, "pooled scatter")
    return DiscriminantModel("LDA", data.classes, priors, means, scatters=scatters, pooled=pooled, meta=meta)


def weighted_lda(T: np.ndarray, labels: np.ndarray, weights: np.ndarray, classes: tuple, priors) -> DiscriminantModel:
    """LDA on case-weighted rows: weighted group means, weight-normalized pooled scatter"""
    g = len(classes)
    p = T.shape[1]
    means = np.zeros((g, p))
    pooled = np.zeros((p, p))
    for j in range(g):
        mask = labels == j
        w = weights[mask]
        if w.sum() <= 0:
            raise InputError("a group has zero total weight", group=j)
        means[j] = w @ T[mask] / w.sum()
        Z = T[mask] - means[j]
        pooled += (Z * w[:, None]).T @ Z
    pooled = linalg.symmetrize(pooled / weights.sum())
    linalg.inverse(pooled, "weighted pooled scatter")
    return DiscriminantModel("LDA", classes, priors, means, pooled=pooled, meta={"weighted": True})
