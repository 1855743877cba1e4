# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 11:02
# @Author  : robricks
# @Desc    : linear regression problems and fits
import dataclasses
from typing import Optional

import numpy as np

from robricks.core.errors import InputError
from robricks.lib import linalg
from robricks.lib.scales import ScaleEstimate


@dataclasses.dataclass
class RegressionProblem:
    """
    X: n x p predictors, y: n responses

    with ``intercept`` a ones column is prepended, the first coefficient of
    every fit is then the intercept. Nothing is centered implicitly.
    """

    X: np.ndarray
    y: np.ndarray
    intercept: bool = False
    names: Optional[list] = None

    def __post_init__(self):
        self.X = linalg.as_matrix(self.X)
        self.y = linalg.as_vector(self.y, self.X.shape[0])
        if not self.intercept and self.X.shape[1] == 0:
            raise InputError("no predictors and no intercept")
        self.design = self.make_design(self.X)

    def make_design(self, X) -> np.ndarray:
        X = linalg.as_matrix(X)
        if self.intercept:
            return np.hstack([np.ones((X.shape[0], 1)), X])
        return X

    @property
    def n(self) -> int:
        return self.design.shape[0]

    @property
    def p(self) -> int:
        return self.design.shape[1]

    def subset(self, rows) -> "RegressionProblem":
        return RegressionProblem(self.X[rows], self.y[rows], self.intercept, self.names)

    def replace(self, X=None, y=None) -> "RegressionProblem":
        return RegressionProblem(
            self.X if X is None else X,
            self.y if y is None else y,
            self.intercept,
            self.names,
        )


@dataclasses.dataclass
class RegressionFit:
    beta: np.ndarray
    sigma: ScaleEstimate
    residuals: np.ndarray
    case_weights: np.ndarray
    method: str
    intercept: bool = False
    meta: dict = dataclasses.field(default_factory=dict)

    @property
    def iterations(self) -> int:
        return self.meta.get("iterations", 0)

    @property
    def converged(self) -> bool:
        return self.meta.get("converged", True)

    @property
    def coef(self) -> np.ndarray:
        """slopes without the intercept"""
        return self.beta[1:] if self.intercept else self.beta

    def predict(self, X) -> np.ndarray:
        X = linalg.as_matrix(X)
        if self.intercept:
            X = np.hstack([np.ones((X.shape[0], 1)), X])
        if X.shape[1] != self.beta.size:
            raise InputError("column count does not match the fit", columns=X.shape[1])
        return X @ self.beta

    def summary(self) -> str:
        return (
            f"method={self.method} sigma={self.sigma.value:.6g} "
            f"iterations={self.iterations} converged={self.converged}"
        )


def make_fit(
    problem: RegressionProblem,
    beta: np.ndarray,
    sigma: ScaleEstimate,
    method: str,
    case_weights: np.ndarray = None,
    **meta,
) -> RegressionFit:
    beta = np.asarray(beta, dtype=float)
    residuals = problem.y - problem.design @ beta
    if case_weights is None:
        case_weights = np.ones(problem.n)
    return RegressionFit(
        beta=beta,
        sigma=sigma,
        residuals=residuals,
        case_weights=np.asarray(case_weights, dtype=float),
        method=method,
        intercept=problem.intercept,
        meta=meta,
    )


def is_exact(problem: RegressionProblem, residuals: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.all(np.abs(residuals) <= tol * max(1.0, float(np.abs(problem.y).max()))))


from robricks.regression.classic import l1_fit, ols_fit  # noqa E402
from robricks.regression.m import m_fit  # noqa E402
from robricks.regression.subsampling import (  # noqa E402
    ScaleSpec,
    default_h,
    lms_fit,
    lts_fit,
    required_subsamples,
    s_fit,
    scale_min_fit,
)
from robricks.regression.mm import mm_fit  # noqa E402
from robricks.regression.sparse import (  # noqa E402
    SparsityConfig,
    enet_fit,
    lasso_fit,
    sparse_lts_fit,
)
from robricks.regression.diagnostics import regression_diagnostics  # noqa E402
