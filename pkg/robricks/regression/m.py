# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 11:31
# @Author  : robricks
# @Desc    : regression M-estimators by iteratively reweighted least squares
from typing import Union

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.errors import ConvergenceError, DegenerateError, InputError
from robricks.lib import linalg
from robricks.lib.rho import RhoFamily
from robricks.lib.scales import ScaleEstimate, mad
from robricks.regression import RegressionFit, RegressionProblem, is_exact, make_fit
from robricks.regression.classic import l1_fit
from robricks.state import const


def _as_scale(sigma) -> ScaleEstimate:
    if isinstance(sigma, ScaleEstimate):
        return sigma
    return ScaleEstimate(float(sigma), 1.0, "fixed")


@events.fitting("m")
def m_fit(
    problem: RegressionProblem,
    family: Union[RhoFamily, str] = "huber:1.345",
    sigma: Union[ScaleEstimate, float, str] = "auto",
    beta0: Union[np.ndarray, str] = "auto",
    tol: float = const.IRWLS_TOL,
    max_iter: int = const.IRWLS_MAX_ITER,
) -> RegressionFit:
    """
    M-estimator with a fixed residual scale, computed by IRWLS

    :param problem: regression problem
    :param family: rho family; monotone families reach the global minimum,
        bounded ones the local minimum nearest ``beta0``
    :param sigma: residual scale, ``"auto"`` is the consistent MAD of the L1 residuals
    :param beta0: start, ``"auto"`` is the L1 fit and only allowed for monotone psi
    :param tol: relative tolerance on the coefficient change
    :param max_iter: iteration cap
    """
    family = RhoFamily.from_spec(family)
    Z, y = problem.design, problem.y

    start = None
    if isinstance(beta0, str):
        if family.bounded:
            raise InputError(
                f"{family.kind} needs an explicit robust start", family=family.spec
            )
        start = l1_fit(problem)
        beta = start.beta
    else:
        beta = linalg.as_vector(beta0, problem.p, "beta0")

    r = y - Z @ beta
    if isinstance(sigma, str):
        start = start or l1_fit(problem)
        sigma = mad(start.residuals, consistent=True)
    sigma = _as_scale(sigma)

    if is_exact(problem, r):
        return make_fit(problem, beta, sigma, "m", family=family.spec, iterations=1)
    if sigma.value <= 0:
        raise DegenerateError("zero residual scale with nonzero residuals", family=family.spec)

    s = sigma.value

    def objective(res):
        return float(family.rho(res / s).sum())

    trace = [objective(r)]
    for iteration in range(1, max_iter + 1):
        w = family.weight(r / s)
        updated = linalg.lstsq(Z, y, weights=w)
        step = float(np.linalg.norm(updated - beta))
        beta = updated
        r = y - Z @ beta
        trace.append(objective(r))
        events.emit(
            const.ON_ITERATION, "m", iteration=iteration, step=step, objective=trace[-1]
        )
        if step <= tol * (float(np.linalg.norm(beta)) + tol):
            logger.debug(f"[m] {family.spec} converged after {iteration} iterations")
            break
    else:
        last = _finish(problem, beta, sigma, family, max_iter, False, trace)
        raise ConvergenceError("IRWLS did not converge", last=last, iterations=max_iter)

    return _finish(problem, beta, sigma, family, iteration, True, trace)


def _finish(problem, beta, sigma, family, iterations, converged, trace) -> RegressionFit:
    r = problem.y - problem.design @ beta
    w = family.weight(r / sigma.value)
    w0 = float(family.weight(0.0))
    weights = np.clip(w / w0, 0.0, 1.0) if w0 > 0 and np.isfinite(w0) else np.ones_like(w)
    return make_fit(
        problem,
        beta,
        sigma,
        "m",
        case_weights=weights,
        family=family.spec,
        iterations=iterations,
        converged=converged,
        objective_trace=trace,
    )
