# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 09:05
# @Author  : robricks
# @Desc    : partial least squares
import dataclasses
from typing import Optional

import numpy as np

from robricks.core.errors import InputError
from robricks.lib import linalg


@dataclasses.dataclass
class PLSModel:
    """
    weights V (p x k) are the NIPALS weighting vectors, ``rotations`` map
    centered X straight to the scores T, ``coefficients`` (p x q) give
    Y_hat = (X - x_center) / x_scale @ coefficients + y_center

    ``transform`` is ``"sign"`` when rows are mapped to spatial signs before
    the coefficients apply
    """

    x_center: np.ndarray
    x_scale: np.ndarray
    y_center: np.ndarray
    weights: np.ndarray
    rotations: np.ndarray
    loadings: np.ndarray
    scores: np.ndarray
    coefficients: np.ndarray
    case_weights: np.ndarray
    n_components: int
    eta: float = 0.0
    method: str = "pls"
    transform: str = "none"
    univariate: bool = True
    meta: dict = dataclasses.field(default_factory=dict)

    def preprocess(self, X) -> np.ndarray:
        X = linalg.as_matrix(X)
        if X.shape[1] != self.x_center.size:
            raise InputError("column count does not match the model", columns=X.shape[1])
        Z = (X - self.x_center) / self.x_scale
        if self.transform == "sign":
            from robricks.multivariate.signcov import spatial_signs

            Z = spatial_signs(Z, np.zeros(Z.shape[1]))
        return Z

    def predict(self, X) -> np.ndarray:
        Y = self.preprocess(X) @ self.coefficients + self.y_center
        return Y[:, 0] if self.univariate else Y

    def transform_scores(self, X) -> np.ndarray:
        return self.preprocess(X) @ self.rotations

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(np.any(self.coefficients != 0, axis=1))

    def summary(self) -> str:
        return f"method={self.method} k={self.n_components} eta={self.eta} nonzero={self.support.size}"


def biplot_rows(model: PLSModel, names: Optional[list] = None) -> list:
    """scores (one row per case) and loadings (one row per variable) for a biplot"""
    rows = []
    for i, t in enumerate(model.scores):
        rows.append({"kind": "score", "label": str(i), **{f"c{j + 1}": v for j, v in enumerate(t)}})
    for j, p in enumerate(model.loadings):
        label = names[j] if names else f"x{j + 1}"
        rows.append({"kind": "loading", "label": label, **{f"c{h + 1}": v for h, v in enumerate(p)}})
    return rows


from robricks.pls.nipals import pls_fit, pls_from_covariance, snipls_fit  # noqa E402
from robricks.pls.robust import PRMConfig, prm_fit, spatial_sign_pls, sprm_fit  # noqa E402
