# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 11:15
# @Author  : robricks
# @Desc    : least squares and least absolute deviations
import math

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.lib import linalg
from robricks.lib.scales import ScaleEstimate
from robricks.regression import RegressionFit, RegressionProblem, make_fit
from robricks.state import const


def _rmse(residuals: np.ndarray, dof: int) -> ScaleEstimate:
    dof = max(dof, 1)
    return ScaleEstimate(math.sqrt(float(residuals @ residuals) / dof), 1.0, "rmse")


@events.fitting("ols")
def ols_fit(problem: RegressionProblem) -> RegressionFit:
    """
    ordinary least squares

    rank-deficient designs raise ``SingularityError``
    """
    beta = linalg.lstsq(problem.design, problem.y)
    r = problem.y - problem.design @ beta
    return make_fit(problem, beta, _rmse(r, problem.n - problem.p), "ols", iterations=1)


@events.fitting("l1")
def l1_fit(
    problem: RegressionProblem,
    tol: float = const.IRWLS_TOL,
    max_iter: int = const.IRWLS_MAX_ITER,
) -> RegressionFit:
    """
    least absolute deviations by IRWLS

    weights 1 / max(|r|, L1_FLOOR) starting from least squares, stops once the
    relative decrease of sum|r| falls below ``tol``
    """
    Z, y = problem.design, problem.y
    beta = linalg.lstsq(Z, y)
    r = y - Z @ beta
    objective = float(np.abs(r).sum())
    best = (objective, beta)
    converged = False

    for iteration in range(1, max_iter + 1):
        if objective == 0:
            converged = True
            break
        w = 1.0 / np.maximum(np.abs(r), const.L1_FLOOR)
        beta = linalg.lstsq(Z, y, weights=w)
        r = y - Z @ beta
        updated = float(np.abs(r).sum())
        updated < best[0] and (best := (updated, beta))
        if objective - updated <= tol * max(objective, 1e-300):
            converged = True
            objective = updated
            break
        objective = updated

    else:
        iteration = max_iter
        logger.debug(f"[l1] stopped at the iteration cap, objective={objective:.10g}")

    beta = best[1]
    r = y - Z @ beta
    sigma = ScaleEstimate(float(np.abs(r).mean()), 1.0, "mean-abs")
    return make_fit(
        problem,
        beta,
        sigma,
        "l1",
        iterations=iteration if objective else 0,
        converged=converged,
        objective=best[0],
    )
