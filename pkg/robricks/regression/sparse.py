# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 13:10
# @Author  : robricks
# @Desc    : lasso, elastic net and sparse LTS by coordinate descent
import dataclasses
import math
from typing import Optional

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.dispatch import Dispatcher
from robricks.core.errors import ConvergenceError, InputError
from robricks.lib import streams
from robricks.lib.scales import ScaleEstimate, trimmed_squares_scale
from robricks.regression import RegressionFit, RegressionProblem, make_fit
from robricks.state import const


@dataclasses.dataclass
class SparsityConfig:
    """
    lam: L1 weight in  sum r**2 + lam * |beta|_1 + mu * |beta|_2**2
    mu: squared-L2 weight (elastic net)
    h: coverage of sparse LTS, default floor(0.75 n)
    """

    lam: float = 0.0
    mu: float = 0.0
    h: Optional[int] = None

    def __post_init__(self):
        if self.lam < 0 or self.mu < 0:
            raise InputError("penalties must be nonnegative", lam=self.lam, mu=self.mu)


def soft(z, t):
    return np.sign(z) * np.maximum(np.abs(z) - t, 0.0)


def coordinate_descent(
    X: np.ndarray,
    y: np.ndarray,
    lam: float,
    mu: float = 0.0,
    intercept: bool = True,
    start: np.ndarray = None,
    tol: float = const.CD_TOL,
    max_iter: int = const.CD_MAX_ITER,
):
    """
    minimise ||y - b0 - X b||**2 + lam * |b|_1 + mu * |b|**2, b0 unpenalised

    columns are centered (with intercept) and scaled to unit norm inside, the
    penalty is rescaled so the solution is the one on the original scale.
    Stops when the KKT violation drops below ``tol * max(1, ||y||)``.

    :return: (intercept, slopes, sweeps)
    """
    n, p = X.shape
    if intercept:
        xm, ym = X.mean(axis=0), float(y.mean())
    else:
        xm, ym = np.zeros(p), 0.0
    Xc, yc = X - xm, y - ym
    s = np.sqrt((Xc**2).sum(axis=0))
    active = s > 1e-12 * max(1.0, float(s.max(initial=0.0)))
    s = np.where(active, s, 1.0)
    Xs = Xc / s

    b = np.zeros(p) if start is None else np.asarray(start, dtype=float) * s
    b[~active] = 0.0
    r = yc - Xs @ b
    l1 = lam / (2 * s)
    l2 = mu / s**2
    bound = tol * max(1.0, float(np.linalg.norm(yc)))

    for sweep in range(1, max_iter + 1):
        for j in np.flatnonzero(active):
            old = b[j]
            new = soft(Xs[:, j] @ r + old, l1[j]) / (1 + l2[j])
            if new != old:
                r -= Xs[:, j] * (new - old)
                b[j] = new

        g = Xs.T @ r - l2 * b
        violation = np.where(b != 0, np.abs(g - l1 * np.sign(b)), np.maximum(np.abs(g) - l1, 0))
        if float(violation[active].max(initial=0.0)) <= bound:
            break
    else:
        raise ConvergenceError(
            "coordinate descent did not converge",
            last=(ym - xm @ (b / s), b / s),
            iterations=max_iter,
        )

    beta = b / s
    return ym - float(xm @ beta), beta, sweep


def _penalized_fit(problem, lam, mu, method, start=None, **kwargs) -> RegressionFit:
    if lam < 0 or mu < 0:
        raise InputError("penalties must be nonnegative", lam=lam, mu=mu)
    b0, slopes, sweeps = coordinate_descent(
        problem.X, problem.y, lam, mu, problem.intercept, start=start, **kwargs
    )
    beta = np.concatenate([[b0], slopes]) if problem.intercept else slopes
    r = problem.y - problem.design @ beta
    objective = float(r @ r + lam * np.abs(slopes).sum() + mu * slopes @ slopes)
    sigma = ScaleEstimate(math.sqrt(float(r @ r) / problem.n), 1.0, "rmse")
    return make_fit(
        problem,
        beta,
        sigma,
        method,
        lam=lam,
        mu=mu,
        support=np.flatnonzero(slopes).tolist(),
        nonzeros=int(np.count_nonzero(slopes)),
        objective=objective,
        iterations=sweeps,
        converged=True,
    )


@events.fitting("lasso")
def lasso_fit(problem: RegressionProblem, lam: float, **kwargs) -> RegressionFit:
    """sum r**2 + lam * |beta|_1, intercept unpenalised"""
    return _penalized_fit(problem, lam, 0.0, "lasso", **kwargs)


@events.fitting("enet")
def enet_fit(problem: RegressionProblem, lam: float, mu: float, **kwargs) -> RegressionFit:
    """sum r**2 + lam * |beta|_1 + mu * |beta|_2**2 (squared L2)"""
    return _penalized_fit(problem, lam, mu, "enet", **kwargs)


def _trimmed_objective(problem, beta, h, penalty):
    r = problem.y - problem.design @ beta
    slopes = beta[1:] if problem.intercept else beta
    H = np.sort(np.argsort(r**2, kind="stable")[:h])
    return float(np.sort(r**2)[:h].sum() + penalty * np.abs(slopes).sum()), H


def _csteps(problem, H, h, penalty, max_steps, start=None):
    fit = lasso_fit(problem.subset(H), penalty, start=start)
    objective, H_new = _trimmed_objective(problem, fit.beta, h, penalty)
    trace = [objective]
    for _ in range(max_steps):
        if np.array_equal(H_new, H):
            break
        H = H_new
        fit = lasso_fit(problem.subset(H), penalty, start=fit.coef)
        objective, H_new = _trimmed_objective(problem, fit.beta, h, penalty)
        trace.append(objective)
    return objective, H, fit.beta, trace


@events.fitting("sparse-lts")
def sparse_lts_fit(
    problem: RegressionProblem,
    lam: float,
    h: Optional[int] = None,
    n_starts: int = const.SPARSE_LTS_STARTS,
    seed: Optional[int] = None,
    max_csteps: int = const.MAX_CSTEPS,
    threads: Optional[int] = None,
) -> RegressionFit:
    """
    sum of the h smallest squared residuals + h * lam * |beta|_1

    each start fits the lasso on three random cases, runs two concentration
    steps (lasso refits on the current h-subset); the 10 best are then
    concentrated until the subset repeats

    :param problem: regression problem
    :param lam: penalty per retained case
    :param h: coverage, default floor(0.75 n)
    :param n_starts: random starts, start i draws from stream (seed, i)
    :param seed: seed
    :param max_csteps: concentration step cap
    :param threads: worker threads
    """
    n = problem.n
    h = h or int(math.floor(0.75 * n))
    if not 1 <= h <= n:
        raise InputError(f"h must lie in [1, {n}]", h=h)
    seed = streams.resolve_seed(seed)
    penalty = h * lam
    size = min(3, n)

    def first(i):
        rng = streams.stream(seed, i)
        H = np.sort(rng.choice(n, size=size, replace=False))
        fit = lasso_fit(problem.subset(H), penalty)
        _, H = _trimmed_objective(problem, fit.beta, h, penalty)
        objective, H, beta, _ = _csteps(problem, H, h, penalty, 1)
        return objective, i, H

    def second(item):
        _, i, H = item
        objective, H, beta, trace = _csteps(problem, H, h, penalty, max_csteps)
        return objective, i, H, beta, trace

    with events.muted:
        with Dispatcher(threads) as dispatcher:
            stage = sorted(dispatcher.map(first, range(n_starts)), key=lambda c: (c[0], c[1]))
            finals = dispatcher.map(second, stage[: const.MCD_KEEP])

    objective, index, H, beta, trace = min(finals, key=lambda c: (c[0], c[1]))
    logger.debug(f"[sparse-lts] best start {index}, objective={objective:.10g}")
    r = problem.y - problem.design @ beta
    weights = np.zeros(n)
    weights[H] = 1.0
    slopes = beta[1:] if problem.intercept else beta
    return make_fit(
        problem,
        beta,
        trimmed_squares_scale(r, h),
        "sparse-lts",
        case_weights=weights,
        lam=lam,
        h=h,
        penalty_scaling="h*lam",
        support=np.flatnonzero(slopes).tolist(),
        nonzeros=int(np.count_nonzero(slopes)),
        objective=objective,
        objective_trace=trace,
        n_starts=n_starts,
        seed=seed,
        converged=True,
    )
