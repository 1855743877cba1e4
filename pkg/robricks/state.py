# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 09:20
# @Author  : robricks
# @Desc    : named defaults and process-wide settings
import dataclasses
import os

__all__ = (
    "const",
    "G",
    "Settings",
)


@dataclasses.dataclass
class Settings:
    """
    process-wide settings, seeded from the environment

    - ROBRICKS_THREADS: worker threads for resampling loops
    - ROBRICKS_SEED: default seed of every randomized estimator
    - ROBRICKS_LOG_LEVEL: loguru level of the stdout sink
    """

    threads: int = 1
    seed: int = 20240101
    log_level: str = "INFO"

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            threads=int(os.environ.get("ROBRICKS_THREADS", 1)),
            seed=int(os.environ.get("ROBRICKS_SEED", 20240101)),
            log_level=os.environ.get("ROBRICKS_LOG_LEVEL", "INFO"),
        )

    def update(self, **kwargs):
        for k, v in kwargs.items():
            if v is not None and hasattr(self, k):
                setattr(self, k, v)
        return self


G = Settings.from_env()


class const:  # noqa
    # 事件类型
    ERROR_OCCURRED = "ERROR_OCCURRED"
    BEFORE_FIT = "BEFORE_FIT"
    AFTER_FIT = "AFTER_FIT"
    ON_ITERATION = "ON_ITERATION"

    # scale / M-estimation
    SCALE_TOL = 1e-9
    SCALE_MAX_ITER = 200
    IRWLS_TOL = 1e-8
    IRWLS_MAX_ITER = 500
    L1_FLOOR = 1e-8
    MAD_CONSTANT = 0.675
    MM_EFFICIENCY = 0.85
    MM_K = 3.44
    MC_DRAWS = 10**6
    MC_SEED = 20240101

    # subsampling
    SUBSAMPLE_EPS = 0.5
    SUBSAMPLE_GAMMA = 0.01
    MAX_CSTEPS = 50

    # MCD
    MCD_STARTS = 500
    MCD_KEEP = 10
    MCD_PRE_STEPS = 2

    # Stahel-Donoho
    SD_DIRS_PER_VAR = 250
    SD_MAX_DIRS = 5000
    SD_QUANTILE = 0.95

    # spatial median / PCA / PRM
    WEISZFELD_TOL = 1e-10
    WEISZFELD_MAX_ITER = 1000
    MARONNA_TOL = 1e-6
    MARONNA_MAX_ITER = 100
    PRM_TOL = 1e-6
    PRM_MAX_ITER = 100
    FAIR_C = 4.0
    # Fair weights only act beyond this chi-square quantile
    PRM_QUANTILE = 0.975

    # grid algorithm
    GRID_ANGLES = 10
    GRID_TOL = 1e-5
    GRID_MAX_SWEEPS = 100

    # sparse
    CD_TOL = 1e-8
    CD_MAX_ITER = 10000
    SPARSE_LTS_STARTS = 100

    # discriminant
    WEIGHT_FLOOR = 1e-6

    # validation
    BOOTSTRAP_M = 2000
    BOOTSTRAP_MAX_FAILURES = 0.5
    CV_SPLITS = 100
    CV_TEST_FRACTION = 0.25
    CV_TRIM = 0.15

    # cli
    SCHEMA_VERSION = 1
    DIGITS = 17
