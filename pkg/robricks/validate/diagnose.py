# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 18:15
# @Author  : robricks
# @Desc    : empirical influence, maxbias and breakdown
import dataclasses
from typing import Callable, Optional, Sequence

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.dispatch import Dispatcher
from robricks.core.errors import InputError
from robricks.lib import streams
from robricks.validate import ContaminationSpec


def _data(data) -> np.ndarray:
    data = np.asarray(data, dtype=float)
    data = data.reshape(-1, 1) if data.ndim == 1 else data
    if data.ndim != 2 or data.shape[0] == 0:
        raise InputError("data must be a nonempty array of rows", shape=data.shape)
    return data


def _stat(statistic: Callable, rows: np.ndarray, flat: bool) -> np.ndarray:
    with events.muted:
        value = statistic(rows[:, 0] if flat else rows)
    return np.atleast_1d(np.asarray(value, dtype=float)).ravel()


def central_index(data: np.ndarray) -> int:
    """row nearest the coordinatewise median"""
    return int(np.argmin(np.linalg.norm(data - np.median(data, axis=0), axis=1)))


@dataclasses.dataclass
class InfluenceCurve:
    z_grid: np.ndarray
    values: np.ndarray
    index: int

    def rows(self) -> list:
        return [
            {"z": z.tolist() if np.ndim(z) else z, **{f"eif{j}": v for j, v in enumerate(row)}}
            for z, row in zip(self.z_grid, self.values)
        ]


def empirical_influence(statistic: Callable, data, z_grid: Sequence, index: Optional[int] = None) -> InfluenceCurve:
    """
    (T(data with row ``index`` set to z) - T(data)) * n for every z

    ``data`` is an array of rows (1-D data are one column and the statistic
    then receives a 1-D array); the default row is the one nearest the
    coordinatewise median
    """
    flat = np.asarray(data).ndim == 1
    data = _data(data)
    n, d = data.shape
    index = central_index(data) if index is None else int(index)
    if not 0 <= index < n:
        raise InputError("index out of range", index=index, n=n)
    base = _stat(statistic, data, flat)
    z_grid = np.asarray(z_grid, dtype=float)
    values = []
    for z in z_grid:
        modified = data.copy()
        modified[index] = np.broadcast_to(z, (d,))
        values.append((_stat(statistic, modified, flat) - base) * n)
    return InfluenceCurve(z_grid, np.array(values), index)


@dataclasses.dataclass
class MaxbiasCurve:
    """
    bias[k] = max over trials of |T(contaminated) - T(data)| with m_grid[k]
    rows replaced; a lower bound of the true maxbias, made non-decreasing
    across m. ``raw`` keeps the per-trial values, NaN where T failed
    """

    m_grid: np.ndarray
    bias: np.ndarray
    raw: np.ndarray
    n: int
    trials: int
    seed: int
    lower_bound: bool = True

    @property
    def fractions(self) -> np.ndarray:
        return self.m_grid / self.n

    def rows(self) -> list:
        return [
            {"m": int(m), "fraction": m / self.n, "maxbias": b, "trials": self.trials, "seed": self.seed}
            for m, b in zip(self.m_grid, self.bias)
        ]


def empirical_maxbias(
    statistic: Callable,
    data,
    contamination: ContaminationSpec,
    m_grid: Optional[Sequence[int]] = None,
    trials: int = 20,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
) -> MaxbiasCurve:
    """
    replace m rows per the contamination spec and record the largest bias

    trial t fixes one row order and one candidate replacement per row from
    stream (seed, t); the contaminated set for m is the first m rows of that
    order, so the sets are nested in m
    """
    flat = np.asarray(data).ndim == 1
    data = _data(data)
    n = data.shape[0]
    if m_grid is None:
        top = int(np.ceil(contamination.fraction * n)) if contamination.fraction > 0 else n // 2
        m_grid = range(0, top + 1)
    m_grid = np.asarray(sorted(set(int(m) for m in m_grid)), dtype=int)
    if m_grid.size == 0 or m_grid[0] < 0 or m_grid[-1] > n:
        raise InputError("m_grid must lie in [0, n]", n=n)
    if trials < 1:
        raise InputError("trials must be positive", trials=trials)
    seed = streams.resolve_seed(seed)
    base = _stat(statistic, data, flat)

    def trial(t):
        rng = streams.stream(seed, t)
        order = rng.permutation(n)
        candidates = contamination.replacements(data, rng)
        row = np.empty(m_grid.size)
        for k, m in enumerate(m_grid):
            modified = data.copy()
            rows = order[:m]
            modified[rows] = candidates[rows]
            try:
                row[k] = float(np.linalg.norm(_stat(statistic, modified, flat) - base))
            except Exception as e:
                logger.warning(f"[maxbias] trial {t} m={m} failed: {e}")
                row[k] = np.nan
        return row

    raw = np.array(Dispatcher(threads).map(trial, range(trials)))
    filled = np.where(np.isnan(raw), -np.inf, raw).max(axis=0)
    per_m = np.where(np.isneginf(filled), np.nan, filled)
    bias = np.fmax.accumulate(per_m)
    return MaxbiasCurve(m_grid, bias, raw, n, trials, seed)


@dataclasses.dataclass
class BreakdownResult:
    value: float
    m: Optional[int]
    flagged: bool
    curve: MaxbiasCurve


def breakdown_scan(
    statistic: Callable,
    data,
    contamination: ContaminationSpec,
    threshold: float,
    m_grid: Optional[Sequence[int]] = None,
    trials: int = 20,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
) -> BreakdownResult:
    """
    smallest m / n whose empirical maxbias exceeds ``threshold``

    1 with ``flagged`` set when no m on the grid gets there
    """
    if threshold <= 0:
        raise InputError("threshold must be positive", threshold=threshold)
    n = _data(data).shape[0]
    curve = empirical_maxbias(
        statistic, data, contamination, range(0, n + 1) if m_grid is None else m_grid, trials, seed, threads
    )
    over = np.flatnonzero(curve.bias > threshold)
    if over.size == 0:
        return BreakdownResult(1.0, None, True, curve)
    m = int(curve.m_grid[over[0]])
    return BreakdownResult(m / n, m, False, curve)
