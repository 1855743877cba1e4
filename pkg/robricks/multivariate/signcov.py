# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 15:05
# @Author  : robricks
# @Desc    : spatial signs and the sign covariance matrix
from typing import Literal, Union

import numpy as np

from robricks.core import events
from robricks.core.errors import DegenerateError, InputError, SingularityError
from robricks.lib import linalg
from robricks.lib.scales import mad
from robricks.multivariate import CovarianceEstimate
from robricks.multivariate.location import (
    coordinatewise_median,
    spatial_median,
    squared_distances,
)


def spatial_signs(X, center) -> np.ndarray:
    """rows (x - t) / ||x - t||, rows equal to t map to zero"""
    X = linalg.as_matrix(X)
    center = np.asarray(center, dtype=float).ravel()
    if center.size != X.shape[1]:
        raise InputError("center dimension does not match X", size=center.size)
    Z = X - center
    norms = np.linalg.norm(Z, axis=1)
    out = np.zeros_like(Z)
    nonzero = norms > 0
    out[nonzero] = Z[nonzero] / norms[nonzero, None]
    return out


def sign_basis(X, center) -> np.ndarray:
    """eigenvectors of the spatial-sign covariance, by decreasing eigenvalue"""
    S = spatial_signs(X, center)
    if not np.any(S):
        raise DegenerateError("every observation coincides with the center")
    _, U = linalg.eigh_desc(S.T @ S / S.shape[0])
    return U


@events.fitting("sign-covariance")
def sign_covariance(
    X,
    center: Union[Literal["spatial", "coordinatewise"], np.ndarray] = "spatial",
) -> CovarianceEstimate:
    """
    C = U diag(lambda) U' with U the eigenvectors of the spatial-sign
    covariance and lambda_j the squared consistent MAD of X u_j, sorted
    decreasingly
    """
    X = linalg.as_matrix(X)
    n, p = X.shape
    if n < 2:
        raise InputError("need at least two rows", n=n)
    if isinstance(center, str):
        t = spatial_median(X) if center == "spatial" else coordinatewise_median(X)
    else:
        t = np.asarray(center, dtype=float)

    U = sign_basis(X, t)
    lam = np.array([mad(X @ U[:, j], consistent=True).value ** 2 for j in range(p)])
    order = np.argsort(lam, kind="stable")[::-1]
    lam, U = lam[order], U[:, order]
    C = U @ np.diag(lam) @ U.T

    singular = False
    try:
        d = squared_distances(X, t, C)
    except SingularityError:
        Z = X - t
        d = np.einsum("ij,jk,ik->i", Z, np.linalg.pinv(C), Z)
        singular = True

    return CovarianceEstimate(
        t,
        C,
        np.maximum(d, 0.0),
        np.ones(n),
        "sign-covariance",
        meta={"eigenvalues": lam, "eigenvectors": U, "singular": singular},
    )
