# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 16:02
# @Author  : robricks
# @Desc    : grid algorithm for projection pursuit
import math
from typing import Callable, Optional, Tuple, Union

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.errors import ConvergenceError, InputError
from robricks.lib import linalg
from robricks.lib.scales import mad
from robricks.multivariate import DirectionSet
from robricks.pursuit import GridConfig
from robricks.state import const

INDICES = {
    "variance": lambda v: float(np.var(v, ddof=1)) if v.size > 1 else 0.0,
    "sd": lambda v: float(np.std(v, ddof=1)) if v.size > 1 else 0.0,
    "mad": lambda v: mad(v, consistent=True).value,
}

Index = Union[str, Callable[[np.ndarray], float]]


def resolve_index(index: Index) -> Callable[[np.ndarray], float]:
    if callable(index):
        return index
    if index not in INDICES:
        raise InputError(f"unknown projection index: {index}", index=index)
    return INDICES[index]


def _distance_to_zero(theta: np.ndarray) -> np.ndarray:
    # 方向不分正负, 角度以 pi 为周期
    t = np.mod(theta, math.pi)
    return np.minimum(t, math.pi - t)


def plane_optimize(
    v1: np.ndarray,
    v2: np.ndarray,
    index: Index,
    cfg: GridConfig = None,
    penalty: Optional[Callable[[float], float]] = None,
) -> Tuple[float, float, float]:
    """
    maximise index(cos(t) v1 + sin(t) v2) over t

    the first grid holds ``n_angles`` angles over [0, 180) degrees, every
    refinement puts ``n_angles`` angles on [t* - w, t* + w], w starting at
    45 degrees and shrinking by ``cfg.shrink``, until the grid step drops
    below ``cfg.tol`` radians. Ties go to the angle closest to v1.

    :param v1: current projections
    :param v2: projections on the new variable
    :param index: projection index
    :param cfg: grid configuration
    :param penalty: optional angle -> penalty, subtracted from the index
    :return: (gamma1, gamma2, score)
    """
    cfg = cfg or GridConfig()
    index = resolve_index(index)
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    if not (np.any(v1) or np.any(v2)):
        raise InputError("both projection vectors are zero")

    def score(theta):
        value = index(math.cos(theta) * v1 + math.sin(theta) * v2)
        return value - penalty(theta) if penalty else value

    def pick(thetas, best):
        scores = np.array([score(t) for t in thetas])
        top = scores.max()
        if best is not None and best[1] >= top:
            return best
        tied = thetas[scores == top]
        return float(tied[np.argmin(_distance_to_zero(tied))]), float(top)

    thetas = np.arange(cfg.n_angles) * math.pi / cfg.n_angles
    best = pick(thetas, None)
    width = math.pi / 4
    while True:
        step = 2 * width / (cfg.n_angles - 1)
        thetas = best[0] + np.linspace(-width, width, cfg.n_angles)
        best = pick(thetas, best)
        if step < cfg.tol:
            break
        width *= cfg.shrink

    theta, value = best
    return math.cos(theta), math.sin(theta), value


def deflate(X, a) -> np.ndarray:
    """X (I - a a'), a of unit length"""
    X = linalg.as_matrix(X)
    a = np.asarray(a, dtype=float).ravel()
    if abs(float(np.linalg.norm(a)) - 1) > 1e-8:
        raise InputError("direction must have unit length")
    return X - np.outer(X @ a, a)


def _aligned_change(a, b) -> float:
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


@events.fitting("grid")
def grid_search(X, index: Index, cfg: GridConfig = None) -> Tuple[DirectionSet, float]:
    """
    unit direction a maximising index(X a)

    variables enter by decreasing marginal index (constant columns last);
    each plane search mixes the running direction with the next variable,
    orthogonalised against it; full sweeps repeat until the direction moves
    less than ``cfg.tol``

    :return: (single-direction DirectionSet, score)
    """
    cfg = cfg or GridConfig()
    fn = resolve_index(index)
    X = linalg.as_matrix(X)
    n, p = X.shape

    def pen(a):
        return cfg.penalty * float(np.abs(a).sum()) if cfg.penalty else 0.0

    marginal = np.array(
        [fn(X[:, j]) if np.ptp(X[:, j]) > 0 else -math.inf for j in range(p)]
    )
    if np.all(marginal == -math.inf):
        raise InputError("every column is constant")
    order = np.argsort(-marginal, kind="stable")

    a = np.zeros(p)
    a[order[0]] = 1.0
    if p == 1:
        return DirectionSet(a[None, :], scheme="grid"), fn(X @ a) - pen(a)

    def sweep(a, variables):
        for j in variables:
            u = -a[j] * a
            u[j] += 1.0
            norm = float(np.linalg.norm(u))
            if norm < 1e-12:
                continue
            u /= norm
            g1, g2, _ = plane_optimize(
                X @ a,
                X @ u,
                fn,
                cfg,
                penalty=(lambda t: pen(math.cos(t) * a + math.sin(t) * u)) if cfg.penalty else None,
            )
            a = g1 * a + g2 * u
            a /= np.linalg.norm(a)
        return a

    a = sweep(a, order[1:])
    scores = [fn(X @ a) - pen(a)]
    for sweeps in range(1, cfg.max_sweeps + 1):
        updated = sweep(a, order)
        change = _aligned_change(updated, a)
        a = updated
        scores.append(fn(X @ a) - pen(a))
        events.emit(const.ON_ITERATION, "grid", iteration=sweeps, change=change)
        if change < cfg.tol:
            logger.debug(f"[grid] converged after {sweeps} sweeps, score={scores[-1]:.10g}")
            break
    else:
        raise ConvergenceError(
            "grid sweeps did not converge",
            last=DirectionSet(a[None, :], scheme="grid"),
            iterations=cfg.max_sweeps,
        )

    return DirectionSet(a[None, :], scheme=f"grid:{sweeps}"), scores[-1]
