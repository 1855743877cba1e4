# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 17:08
# @Author  : robricks
# @Desc    : spherical, iteratively reweighted and projection-pursuit PCA
from typing import Optional, Union

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.errors import ConvergenceError, InputError
from robricks.lib import linalg
from robricks.lib.rho import RhoFamily
from robricks.lib.scales import m_scale, mad
from robricks.multivariate.location import spatial_median
from robricks.multivariate.signcov import sign_basis
from robricks.pca import PCAModel, reconstruct
from robricks.pca.classical import _check_q
from robricks.pursuit import GridConfig, deflate, grid_search, resolve_index
from robricks.state import const


def _mad2(v) -> float:
    return mad(v, consistent=True).value ** 2


@events.fitting("spherical-pca")
def spherical_pca(X, q: Optional[int] = None) -> PCAModel:
    """
    spherical principal components

    center at the spatial median, directions from the spatial-sign
    cross-product matrix, eigenvalues the squared consistent MAD of the
    projections; directions are re-sorted by that eigenvalue
    """
    X = linalg.as_matrix(X)
    n, p = X.shape
    if n < 2:
        raise InputError("need at least two rows", n=n)
    q = p if q is None else q
    if not 1 <= q <= p:
        raise InputError(f"q must lie in [1, {p}]", q=q)
    t = spatial_median(X)
    U = sign_basis(X, t)
    lam = np.array([_mad2(X @ U[:, j]) for j in range(p)])
    order = np.argsort(lam, kind="stable")[::-1]
    lam, U = lam[order], U[:, order]
    return PCAModel(t, U[:, :q], lam[:q], "spherical", meta={"all_eigenvalues": lam})


@events.fitting("maronna-pca")
def maronna_pca(
    X,
    q: int,
    family: Union[RhoFamily, str] = "bisquare:1.0",
    delta: float = 0.5,
    tol: float = const.MARONNA_TOL,
    max_iter: int = const.MARONNA_MAX_ITER,
) -> PCAModel:
    """
    iteratively reweighted PCA from the spherical start

    each round: squared reconstruction distances r_i, their M-scale sigma,
    weights W_sigma(r_i / sigma), weighted mean and covariance (normalised by
    the weight sum), top-q eigenvectors; stops when the largest principal
    angle between successive subspaces is below ``tol``
    """
    family = RhoFamily.from_spec(family)
    X = linalg.as_matrix(X)
    n, p = X.shape
    q = _check_q(q, n, p)
    model = spherical_pca(X, q)
    mu, B = model.center, model.loadings
    w = np.ones(n)
    values = model.eigenvalues

    for iteration in range(1, max_iter + 1):
        _, od = reconstruct(PCAModel(mu, B, values, "maronna"), X)
        r = od**2
        sigma = m_scale(r, family, delta)
        if sigma.degenerate:
            logger.debug("[maronna] data lie in the fitted subspace")
            break
        w = family.scale_weight(r / sigma.value)
        mu, C = linalg.weighted_mean_cov(X, w)
        values, vectors = linalg.eigh_desc(C)
        B_new = vectors[:, :q]
        angle = float(np.max(linalg.principal_angles(B, B_new)))
        B = B_new
        events.emit(const.ON_ITERATION, "maronna-pca", iteration=iteration, angle=angle)
        if angle < tol:
            break
    else:
        last = PCAModel(mu, B, np.maximum(values[:q], 0), "maronna")
        raise ConvergenceError("reweighted PCA did not converge", last=last, iterations=max_iter)

    lam = np.maximum(np.asarray(values, dtype=float)[:q], 0.0)
    return PCAModel(
        mu,
        B,
        lam,
        "maronna",
        meta={"iterations": iteration, "weights": w, "family": family.spec, "delta": delta},
    )


@events.fitting("pp-pca")
def pp_pca(
    X,
    q: int,
    index="mad",
    cfg: GridConfig = None,
) -> PCAModel:
    """
    successive grid-search directions on the deflated, spatial-median
    centered data

    eigenvalues are the variance of the scores for the variance index and
    the squared consistent MAD otherwise
    """
    X = linalg.as_matrix(X)
    n, p = X.shape
    if not 1 <= q <= p:
        raise InputError(f"q must lie in [1, {p}]", q=q)
    fn = resolve_index(index)
    dispersion = fn if index == "variance" else _mad2
    t = spatial_median(X)
    Z = X - t
    B = np.zeros((p, 0))
    lam = []
    for _ in range(q):
        directions, _ = grid_search(Z, fn, cfg)
        a = directions.vectors[0]
        a = a - B @ (B.T @ a)
        a /= np.linalg.norm(a)
        B = np.column_stack([B, a])
        lam.append(dispersion((X - t) @ a))
        Z = deflate(Z, a)

    lam = np.asarray(lam)
    order = np.argsort(lam, kind="stable")[::-1]
    return PCAModel(t, B[:, order], lam[order], "pp", meta={"index": str(index)})
