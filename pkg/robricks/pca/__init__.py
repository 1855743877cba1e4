# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 16:40
# @Author  : robricks
# @Desc    : principal components, classical and robust
import dataclasses
from typing import Tuple

import numpy as np

from robricks.core.errors import DegenerateError, InputError
from robricks.lib import linalg


@dataclasses.dataclass
class PCAModel:
    center: np.ndarray
    loadings: np.ndarray
    eigenvalues: np.ndarray
    method: str
    meta: dict = dataclasses.field(default_factory=dict)

    @property
    def q(self) -> int:
        return self.loadings.shape[1]

    @property
    def p(self) -> int:
        return self.loadings.shape[0]

    def scores(self, X) -> np.ndarray:
        X = linalg.as_matrix(X)
        if X.shape[1] != self.p:
            raise InputError("column count does not match the model", columns=X.shape[1])
        return (X - self.center) @ self.loadings

    def summary(self) -> str:
        return f"method={self.method} q={self.q} eigenvalues={np.round(self.eigenvalues, 6).tolist()}"


def unexplained_variance(eigenvalues, q: int) -> float:
    """share of the eigenvalue sum beyond the first q"""
    lam = np.asarray(eigenvalues, dtype=float).ravel()
    if np.any(lam < 0):
        raise InputError("eigenvalues must be nonnegative")
    if not 0 <= q <= lam.size:
        raise InputError(f"q must lie in [0, {lam.size}]", q=q)
    total = float(lam.sum())
    if total <= 0:
        raise DegenerateError("all eigenvalues are zero")
    return float(lam[q:].sum()) / total


def reconstruct(model: PCAModel, x) -> Tuple[np.ndarray, np.ndarray]:
    """
    x_hat = B B' (x - mu) + mu and the orthogonal distance ||x - x_hat||

    one row in, one row out; a matrix gives one distance per row
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    if X.shape[1] != model.p:
        raise InputError("dimension does not match the model", size=X.shape[1])
    B = model.loadings
    X_hat = (X - model.center) @ B @ B.T + model.center
    od = np.linalg.norm(X - X_hat, axis=1)
    return (X_hat[0], od[0]) if single else (X_hat, od)


from robricks.pca.classical import classical_pca, covariance_pca  # noqa E402
from robricks.pca.robust import maronna_pca, pp_pca, spherical_pca  # noqa E402
from robricks.pca.maps import OutlierMap, outlier_map, score_distances  # noqa E402
