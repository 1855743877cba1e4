# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 17:40
# @Author  : robricks
# @Desc    : repeated random-split cross-validation with trimmed errors
import math
from typing import Callable, Sequence

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.dispatch import Dispatcher
from robricks.core.errors import FitFailure, InputError
from robricks.lib import linalg, streams
from robricks.validate import CVConfig, CVReport
from robricks.validate.trimmed import trimmed_rmsep


def one_se_choice(grid: Sequence, rmsecv: np.ndarray, se: np.ndarray):
    """the first grid value whose RMSECV is within one standard error of the minimum"""
    values = np.asarray(rmsecv, dtype=float)
    if np.all(np.isnan(values)):
        raise FitFailure("every complexity failed on every split")
    best = int(np.nanargmin(values))
    bound = values[best] + (0.0 if np.isnan(se[best]) else se[best])
    for i, v in enumerate(values):
        if not np.isnan(v) and v <= bound:
            return grid[i]
    return grid[best]


def monte_carlo_cv(
    X,
    y,
    fit_family: Callable,
    grid: Sequence,
    cfg: CVConfig = None,
    **kwargs,
) -> CVReport:
    """
    repeated random train/test splits

    ``fit_family(complexity, X_train, y_train)`` returns a model with
    ``predict``; every split scores every complexity by the trimmed RMSE of
    its test residuals (largest squared residuals removed). Split i draws
    from stream (seed, i).
    """
    cfg = cfg or CVConfig(**kwargs)
    grid = list(grid)
    if not grid:
        raise InputError("complexity grid is empty")
    X = linalg.as_matrix(X)
    y = np.asarray(y, dtype=float)
    n = X.shape[0]
    if y.shape[0] != n:
        raise InputError("X and y row counts differ", n=n, rows=y.shape[0])
    n_test = min(n - 1, max(1, int(math.floor(cfg.test_fraction * n + 0.5))))
    if n_test < 1 or n - n_test < 1:
        raise InputError("too few rows to split", n=n)
    seed = streams.resolve_seed(cfg.seed)

    def split(i):
        perm = streams.stream(seed, i).permutation(n)
        test, train = perm[:n_test], perm[n_test:]
        row = np.full(len(grid), np.nan)
        for c, complexity in enumerate(grid):
            try:
                with events.muted:
                    model = fit_family(complexity, X[train], y[train])
                residuals = y[test] - np.asarray(model.predict(X[test]))
                row[c] = trimmed_rmsep(residuals, cfg.trim)
            except Exception as e:
                logger.warning(f"[cv] split {i} complexity {complexity!r} failed: {e}")
        return row

    errors = np.array(Dispatcher(cfg.threads).map(split, range(cfg.n_splits)))
    counts = np.sum(~np.isnan(errors), axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        sums = np.nansum(errors, axis=0)
        rmsecv = np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)
        centered = np.where(np.isnan(errors), 0.0, errors - rmsecv)
        var = np.sum(centered**2, axis=0) / np.maximum(counts - 1, 1)
        se = np.where(counts > 1, np.sqrt(var / np.maximum(counts, 1)), np.nan)
    if np.all(np.isnan(rmsecv)):
        raise FitFailure("every complexity failed on every split", grid=grid)

    chosen = grid[int(np.nanargmin(rmsecv))]
    return CVReport(
        grid=grid,
        rmsecv=rmsecv,
        se=se,
        errors=errors,
        chosen=chosen,
        one_se=one_se_choice(grid, rmsecv, se),
        seed=seed,
        n_splits=cfg.n_splits,
        trim=cfg.trim,
        test_fraction=cfg.test_fraction,
    )
