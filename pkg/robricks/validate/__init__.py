# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 16:30
# @Author  : robricks
# @Desc    : resampling, cross-validation and robustness diagnostics
import dataclasses
from typing import Optional, Tuple

import numpy as np

from robricks.core.errors import InputError
from robricks.state import const


@dataclasses.dataclass
class BootstrapConfig:
    """
    :param m: replicates
    :param scale: sd / trimmed / percentile, the spread reported as ``spread``
    :param trim: trimming fraction of the trimmed spread
    :param level: coverage of the percentile interval
    :param n_replace: replace this many random rows by resampled rows
        instead of drawing all n rows
    :param max_failures: share of failed replicates that aborts the run
    """

    m: int = const.BOOTSTRAP_M
    seed: Optional[int] = None
    scale: str = "sd"
    trim: float = 0.1
    level: float = 0.95
    n_replace: Optional[int] = None
    max_failures: float = const.BOOTSTRAP_MAX_FAILURES
    threads: Optional[int] = None

    def __post_init__(self):
        if self.m < 1:
            raise InputError("m must be positive", m=self.m)
        if self.scale not in ("sd", "trimmed", "percentile"):
            raise InputError(f"unknown scale: {self.scale}", scale=self.scale)
        if not 0 <= self.trim < 0.5:
            raise InputError("trim must lie in [0, 0.5)", trim=self.trim)
        if not 0 < self.level < 1:
            raise InputError("level must lie in (0, 1)", level=self.level)


@dataclasses.dataclass
class ResamplingReport:
    estimates: np.ndarray
    sd: np.ndarray
    spread: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    m: int
    seed: int
    scale: str
    trim: float
    level: float
    failures: list = dataclasses.field(default_factory=list)

    def rows(self) -> list:
        return [
            {
                "coordinate": j,
                "sd": self.sd[j],
                "spread": self.spread[j],
                "lower": self.lower[j],
                "upper": self.upper[j],
                "m": self.m,
                "failures": len(self.failures),
                "scale": self.scale,
                "trim": self.trim,
                "level": self.level,
                "seed": self.seed,
            }
            for j in range(self.sd.size)
        ]

    def summary(self) -> str:
        return f"m={self.m} failures={len(self.failures)} scale={self.scale} seed={self.seed}"


@dataclasses.dataclass
class CVConfig:
    n_splits: int = const.CV_SPLITS
    test_fraction: float = const.CV_TEST_FRACTION
    trim: float = const.CV_TRIM
    seed: Optional[int] = None
    threads: Optional[int] = None

    def __post_init__(self):
        if self.n_splits < 1:
            raise InputError("n_splits must be positive", n_splits=self.n_splits)
        if not 0 < self.test_fraction < 1:
            raise InputError("test_fraction must lie in (0, 1)", test_fraction=self.test_fraction)
        if not 0 <= self.trim < 1:
            raise InputError("trim must lie in [0, 1)", trim=self.trim)


@dataclasses.dataclass
class CVReport:
    """
    rmsecv[c] is the mean over splits of the trimmed test RMSE at grid[c];
    cells where every split failed are NaN and never chosen
    """

    grid: list
    rmsecv: np.ndarray
    se: np.ndarray
    errors: np.ndarray
    chosen: object
    one_se: object
    seed: int
    n_splits: int
    trim: float
    test_fraction: float

    @property
    def failed(self) -> np.ndarray:
        return np.isnan(self.errors)

    def rows(self) -> list:
        return [
            {
                "complexity": c,
                "rmsecv": self.rmsecv[i],
                "se": self.se[i],
                "failed_splits": int(self.failed[:, i].sum()),
                "chosen": c == self.chosen,
                "one_se": c == self.one_se,
                "trim": self.trim,
                "n_splits": self.n_splits,
                "seed": self.seed,
            }
            for i, c in enumerate(self.grid)
        ]

    def summary(self) -> str:
        return f"chosen={self.chosen} one_se={self.one_se} trim={self.trim} splits={self.n_splits}"


@dataclasses.dataclass
class ContaminationSpec:
    """
    how replaced rows are generated

    - vertical-range: the last column is the response; x = mean_x + a,
      y = mean_y + b with a, b uniform on ``a_range`` / ``b_range``
    - point-mass: every replaced row becomes ``z``
    - cluster-shift: replaced rows are moved by ``shift``
    """

    fraction: float = 0.0
    kind: str = "vertical-range"
    a_range: Tuple[float, float] = (0.0, 10.0)
    b_range: Tuple[float, float] = (1e4, 1e5)
    z: Optional[np.ndarray] = None
    shift: Optional[np.ndarray] = None

    def __post_init__(self):
        if not 0 <= self.fraction < 1:
            raise InputError("fraction must lie in [0, 1)", fraction=self.fraction)
        if self.kind not in ("vertical-range", "point-mass", "cluster-shift"):
            raise InputError(f"unknown contamination: {self.kind}", kind=self.kind)
        if self.kind == "point-mass" and self.z is None:
            raise InputError("point-mass contamination needs z")
        if self.kind == "cluster-shift" and self.shift is None:
            raise InputError("cluster-shift contamination needs a shift")

    def replacements(self, data: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """one candidate replacement for every row of ``data``"""
        n, d = data.shape
        if self.kind == "point-mass":
            return np.tile(np.broadcast_to(np.asarray(self.z, dtype=float), (d,)), (n, 1))
        if self.kind == "cluster-shift":
            return data + np.broadcast_to(np.asarray(self.shift, dtype=float), (d,))
        center = data.mean(axis=0)
        out = np.empty_like(data)
        out[:, :-1] = center[:-1] + rng.uniform(*self.a_range, size=(n, d - 1))
        out[:, -1] = center[-1] + rng.uniform(*self.b_range, size=n)
        return out


from robricks.validate.trimmed import trimmed_rmsep, trimmed_spread  # noqa E402
from robricks.validate.bootstrap import bootstrap, bootstrap_predictions  # noqa E402
from robricks.validate.crossval import monte_carlo_cv, one_se_choice  # noqa E402
from robricks.validate.diagnose import (  # noqa E402
    BreakdownResult,
    InfluenceCurve,
    MaxbiasCurve,
    breakdown_scan,
    empirical_influence,
    empirical_maxbias,
)
from robricks.validate.scenarios import SCENARIOS, Scenario, simulate_scenario  # noqa E402
