# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 14:10
# @Author  : robricks
# @Desc    : minimum covariance determinant
import itertools
import math
from typing import Optional, Union

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.dispatch import Dispatcher
from robricks.core.errors import DegenerateError, DimensionalityError, InputError, SingularityError
from robricks.lib import linalg, streams
from robricks.multivariate import CovarianceEstimate
from robricks.multivariate.location import squared_distances
from robricks.state import const


def _h_subset(X, location, scatter, h) -> np.ndarray:
    d = squared_distances(X, location, scatter)
    return np.sort(np.argsort(d, kind="stable")[:h])


def _moments(X, H):
    sub = X[H]
    mu = sub.mean(axis=0)
    Z = sub - mu
    return mu, linalg.symmetrize(Z.T @ Z / len(H))


def _logdet(C) -> float:
    sign, value = np.linalg.slogdet(C)
    return float(value) if sign > 0 else -math.inf


def c_steps(X, H, h, max_steps):
    """
    concentration: mean / covariance of H, keep the h smallest distances,
    repeat; the determinant never increases

    :return: (log det, H, steps)
    """
    steps = 0
    for steps in range(1, max_steps + 1):
        mu, C = _moments(X, H)
        if _logdet(C) == -math.inf:
            break
        H_new = _h_subset(X, mu, C, h)
        if np.array_equal(H_new, H):
            break
        H = H_new
    return _logdet(_moments(X, H)[1]), H, steps


def _start(X, rng: np.random.Generator, subset: np.ndarray, h: int):
    # (p + 1)-subset, enlarged with random cases while singular
    n, p = X.shape
    J = list(subset)
    rest = [i for i in rng.permutation(n) if i not in set(J)]
    while True:
        mu, C = _moments(X, np.array(J))
        if _logdet(C) > -math.inf:
            return _h_subset(X, mu, C, h)
        if not rest:
            return None
        J.append(rest.pop(0))


@events.fitting("mcd")
def mcd_fit(
    X,
    h: Optional[int] = None,
    n_starts: Union[int, str] = const.MCD_STARTS,
    seed: Optional[int] = None,
    keep: int = const.MCD_KEEP,
    pre_steps: int = const.MCD_PRE_STEPS,
    max_steps: int = const.MAX_CSTEPS,
    threads: Optional[int] = None,
) -> CovarianceEstimate:
    """
    mean and covariance of the h-subset with the smallest covariance determinant

    random (p + 1)-subsets start concentration steps; after ``pre_steps`` the
    ``keep`` best are iterated until their subsets repeat. When C(n, p + 1)
    does not exceed ``n_starts`` every (p + 1)-subset is used once and all of
    them are iterated to the end. The covariance is rescaled by
    median(d) / chi2_0.5(p) for consistency at the normal model.

    :param X: n x p data, n > p
    :param h: coverage, default floor((n + p + 1) / 2), p < h <= n
    :param n_starts: number of random starts
    :param seed: start i draws from stream (seed, i)
    :param keep: starts carried to convergence
    :param pre_steps: concentration steps before pruning
    :param max_steps: concentration step cap
    :param threads: worker threads
    """
    X = linalg.as_matrix(X)
    n, p = X.shape
    if p >= n:
        raise DimensionalityError("MCD needs more observations than variables", n=n, p=p)
    h = h or (n + p + 1) // 2
    if not p < h <= n:
        raise InputError(f"h must lie in ({p}, {n}]", h=h)
    seed = streams.resolve_seed(seed)

    total = math.comb(n, p + 1)
    exhaustive = n_starts == "all" or total <= int(n_starts)
    if exhaustive:
        items = list(enumerate(itertools.combinations(range(n), p + 1)))
        keep = len(items)
    else:
        items = [(i, None) for i in range(int(n_starts))]

    def first(item):
        i, subset = item
        rng = streams.stream(seed, i)
        subset = np.array(subset) if subset is not None else rng.choice(n, p + 1, replace=False)
        H = _start(X, rng, subset, h)
        if H is None:
            return None
        value, H, _ = c_steps(X, H, h, pre_steps)
        return value, i, H

    def second(candidate):
        value, i, H = candidate
        value, H, steps = c_steps(X, H, h, max_steps)
        return value, i, H, steps

    with Dispatcher(threads) as dispatcher:
        stage = [c for c in dispatcher.map(first, items) if c is not None]
        stage = [c for c in stage if c[0] > -math.inf]
        if not stage:
            raise DegenerateError("every candidate subset has a singular covariance", h=h)
        stage.sort(key=lambda c: (c[0], c[1]))
        finals = dispatcher.map(second, stage[:keep])

    finals = [c for c in finals if c[0] > -math.inf]
    if not finals:
        raise DegenerateError("h-subset covariance is singular (exact fit)", h=h)
    value, index, H, steps = min(finals, key=lambda c: (c[0], tuple(c[2])))

    mu, raw = _moments(X, H)
    d_raw = squared_distances(X, mu, raw)
    factor = float(np.median(d_raw)) / linalg.chi2_quantile(0.5, p)
    scatter = raw * factor
    try:
        d = squared_distances(X, mu, scatter)
    except SingularityError as e:
        raise DegenerateError("MCD scatter is singular") from e

    weights = np.zeros(n)
    weights[H] = 1.0
    logger.debug(f"[mcd] start {index} won with log det {value:.6g} after {steps} steps")
    return CovarianceEstimate(
        mu,
        scatter,
        d,
        weights,
        "mcd",
        meta={
            "h": h,
            "subset": H.tolist(),
            "consistency_factor": factor,
            "log_det": value,
            "n_starts": len(items),
            "exhaustive_starts": exhaustive,
            "seed": seed,
        },
    )


@events.fitting("mcd-reweighted")
def reweighted_mcd(X, quantile: float = 0.975, **kwargs) -> CovarianceEstimate:
    """
    sample mean and covariance of the rows whose raw MCD distance stays
    below the chi-square ``quantile``; keyword arguments go to mcd_fit

    the covariance is scaled by quantile / P(chi2_{p+2} <= chi2_p(quantile)),
    the variance lost to the truncation at the normal model
    """
    X = linalg.as_matrix(X)
    p = X.shape[1]
    raw = mcd_fit(X, **kwargs)
    cutoff = linalg.chi2_quantile(quantile, p)
    mask = raw.distances <= cutoff
    mu = X[mask].mean(axis=0)
    factor = quantile / linalg.chi2_cdf(cutoff, p + 2)
    scatter = factor * np.atleast_2d(np.cov(X[mask], rowvar=False))
    try:
        d = squared_distances(X, mu, scatter)
    except SingularityError as e:
        raise DegenerateError("reweighted MCD scatter is singular") from e
    return CovarianceEstimate(
        mu,
        scatter,
        d,
        mask.astype(float),
        "mcd-reweighted",
        meta={**raw.meta, "quantile": quantile, "kept": int(mask.sum()), "consistency": factor},
    )
