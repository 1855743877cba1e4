# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 17:05
# @Author  : robricks
# @Desc    : case-resampling bootstrap
from typing import Callable, Union

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.dispatch import Dispatcher
from robricks.core.errors import FitFailure, InputError
from robricks.lib import streams
from robricks.validate import BootstrapConfig, ResamplingReport
from robricks.validate.trimmed import trimmed_spread


def _rows(data) -> int:
    arrays = data if isinstance(data, tuple) else (data,)
    sizes = {np.asarray(a).shape[0] for a in arrays}
    if len(sizes) != 1:
        raise InputError("resampled arrays differ in row count", sizes=sorted(sizes))
    n = sizes.pop()
    if n < 1:
        raise InputError("no rows to resample")
    return n


def resample_indices(n: int, rng: np.random.Generator, n_replace=None) -> np.ndarray:
    """
    n draws with replacement, or the identity with ``n_replace`` random
    positions overwritten by drawn rows
    """
    if n_replace is None:
        return rng.integers(0, n, size=n)
    if not 1 <= n_replace <= n:
        raise InputError("n_replace must lie in [1, n]", n_replace=n_replace)
    idx = np.arange(n)
    positions = rng.choice(n, size=n_replace, replace=False)
    idx[positions] = rng.integers(0, n, size=n_replace)
    return idx


def _take(data, idx):
    if isinstance(data, tuple):
        return tuple(np.asarray(a)[idx] for a in data)
    return np.asarray(data)[idx]


def bootstrap(fit_fn: Callable, data, cfg: BootstrapConfig = None, **kwargs) -> ResamplingReport:
    """
    resample the rows of ``data`` (one array or a tuple of arrays sharing
    rows, resampled jointly), evaluate ``fit_fn`` on every replicate

    replicate i draws from stream (seed, i), so the index matrix does not
    depend on the thread count. Failed replicates are listed in the report;
    more than ``max_failures`` of them raise FitFailure.
    """
    cfg = cfg or BootstrapConfig(**kwargs)
    seed = streams.resolve_seed(cfg.seed)
    n = _rows(data)

    def replicate(i):
        idx = resample_indices(n, streams.stream(seed, i), cfg.n_replace)
        sample = _take(data, idx)
        with events.muted:
            ret = fit_fn(*sample) if isinstance(sample, tuple) else fit_fn(sample)
        return np.atleast_1d(np.asarray(ret, dtype=float)).ravel()

    results = Dispatcher(cfg.threads).map(replicate, range(cfg.m), return_exceptions=True)
    failures = [(i, repr(r)) for i, r in enumerate(results) if isinstance(r, BaseException)]
    if failures:
        logger.warning(f"[bootstrap] {len(failures)} of {cfg.m} replicates failed")
    if len(failures) > cfg.max_failures * cfg.m or len(failures) == cfg.m:
        raise FitFailure("too many bootstrap replicates failed", failures=len(failures), m=cfg.m)

    estimates = np.array([r for r in results if not isinstance(r, BaseException)])
    sd = np.std(estimates, axis=0, ddof=1) if estimates.shape[0] > 1 else np.zeros(estimates.shape[1])
    alpha = (1 - cfg.level) / 2
    lower = np.quantile(estimates, alpha, axis=0)
    upper = np.quantile(estimates, 1 - alpha, axis=0)
    if cfg.scale == "sd":
        spread = sd
    elif cfg.scale == "trimmed":
        spread = np.array([trimmed_spread(col, cfg.trim) for col in estimates.T])
    else:
        spread = (upper - lower) / 2
    return ResamplingReport(
        estimates=estimates,
        sd=sd,
        spread=spread,
        lower=lower,
        upper=upper,
        m=cfg.m,
        seed=seed,
        scale=cfg.scale,
        trim=cfg.trim,
        level=cfg.level,
        failures=failures,
    )


def bootstrap_predictions(
    fit_fn: Callable, X, y, X_new, cfg: BootstrapConfig = None, **kwargs
) -> ResamplingReport:
    """bootstrap distribution of ``fit_fn(X, y).predict(X_new)``"""
    X_new = np.atleast_2d(np.asarray(X_new, dtype=float))

    def statistic(Xb, yb):
        return fit_fn(Xb, yb).predict(X_new)

    return bootstrap(statistic, (np.asarray(X, dtype=float), np.asarray(y, dtype=float)), cfg, **kwargs)
