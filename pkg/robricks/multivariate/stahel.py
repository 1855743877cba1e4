# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 14:42
# @Author  : robricks
# @Desc    : Stahel-Donoho outlyingness and weighted estimate
from typing import Optional

import numpy as np

from robricks.core import events
from robricks.core.errors import DegenerateError, InputError, SingularityError
from robricks.lib import linalg, streams
from robricks.multivariate import CovarianceEstimate, DirectionSet
from robricks.multivariate.location import squared_distances
from robricks.state import const


def default_directions(p: int) -> int:
    return min(const.SD_DIRS_PER_VAR * p, const.SD_MAX_DIRS)


def make_directions(X, n_dirs: Optional[int] = None, seed: Optional[int] = None) -> DirectionSet:
    """
    coordinate axes, then differences of random case pairs and random unit
    vectors in equal shares, ``n_dirs`` in total
    """
    X = linalg.as_matrix(X)
    n, p = X.shape
    n_dirs = max(n_dirs or default_directions(p), p)
    seed = streams.resolve_seed(seed)
    rng = streams.stream(seed)

    vectors = [np.eye(p)]
    rest = n_dirs - p
    pairs = rest // 2 if n >= 2 else 0
    if pairs:
        i = rng.integers(0, n, size=pairs)
        j = rng.integers(0, n, size=pairs)
        diff = X[i] - X[j]
        diff = diff[np.linalg.norm(diff, axis=1) > 0]
        vectors.append(diff)
    remaining = n_dirs - sum(len(v) for v in vectors)
    if remaining > 0:
        vectors.append(rng.standard_normal((remaining, p)))

    return DirectionSet(np.vstack(vectors), seed=seed, scheme="axes+pairs+gaussian")


def outlyingness(X, directions: DirectionSet = None, seed: Optional[int] = None) -> np.ndarray:
    """
    max over directions a of |x'a - med(Xa)| / MAD(Xa), consistent MAD;
    directions with zero MAD are skipped
    """
    X = linalg.as_matrix(X)
    directions = directions if directions is not None else make_directions(X, seed=seed)
    if directions.vectors.shape[1] != X.shape[1]:
        raise InputError("direction dimension does not match X")
    proj = X @ directions.vectors.T
    med = np.median(proj, axis=0)
    dev = np.abs(proj - med)
    scale = np.median(dev, axis=0) / const.MAD_CONSTANT
    usable = scale > 1e-12 * max(1.0, float(np.abs(proj).max()))
    if not usable.any():
        return np.zeros(X.shape[0])
    return (dev[:, usable] / scale[usable]).max(axis=1)


def sd_weights(out: np.ndarray, p: int, quantile: float = const.SD_QUANTILE) -> np.ndarray:
    """1 up to sqrt(chi2_q(p)), then (c / u)**2"""
    c = np.sqrt(linalg.chi2_quantile(quantile, p))
    safe = np.maximum(out, c)
    return np.where(out <= c, 1.0, (c / safe) ** 2)


@events.fitting("stahel-donoho")
def stahel_donoho_fit(
    X,
    n_dirs: Optional[int] = None,
    seed: Optional[int] = None,
    directions: DirectionSet = None,
) -> CovarianceEstimate:
    """
    weighted mean and covariance with weights from projection outlyingness

    works for p > n; then the scatter is singular and the reported distances
    are squared outlyingness values (``meta["distance"]``)
    """
    X = linalg.as_matrix(X)
    n, p = X.shape
    if n < 2:
        raise InputError("need at least two rows", n=n)
    directions = directions if directions is not None else make_directions(X, n_dirs, seed)
    out = outlyingness(X, directions)
    w = sd_weights(out, p)
    if w.sum() <= 0:
        raise DegenerateError("all Stahel-Donoho weights are zero")
    mu, C = linalg.weighted_mean_cov(X, w)

    d, kind = out**2, "outlyingness"
    if linalg.rank(C) == p:
        try:
            d, kind = squared_distances(X, mu, C), "mahalanobis"
        except SingularityError:
            pass

    return CovarianceEstimate(
        mu,
        C,
        d,
        w,
        "stahel-donoho",
        meta={
            "n_dirs": len(directions),
            "seed": directions.seed,
            "weight": "hard-then-inverse-square",
            "cutoff_quantile": const.SD_QUANTILE,
            "outlyingness": out,
            "distance": kind,
        },
    )
