# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 16:52
# @Author  : robricks
# @Desc    : trimmed spread and trimmed prediction error
import math

import numpy as np

from robricks.core.errors import InputError


def trimmed_spread(samples, trim: float) -> float:
    """
    standard deviation of the central 1 - 2 * trim share of the sorted samples

    no consistency factor is applied, at the normal model the value is
    below the standard deviation
    """
    if not 0 <= trim < 0.5:
        raise InputError("trim must lie in [0, 0.5)", trim=trim)
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    cut = int(math.floor(trim * x.size + 1e-9))
    central = x[cut : x.size - cut]
    if central.size == 0:
        raise InputError("nothing left after trimming", n=x.size, trim=trim)
    if central.size == 1:
        return 0.0
    return float(np.std(central, ddof=1))


def trimmed_rmsep(residuals, trim: float = 0.0) -> float:
    """root mean of the smallest ceil((1 - trim) n) squared residuals"""
    if not 0 <= trim < 1:
        raise InputError("trim must lie in [0, 1)", trim=trim)
    r2 = np.sort(np.asarray(residuals, dtype=float).ravel() ** 2)
    if r2.size == 0:
        raise InputError("no residuals")
    keep = max(1, int(math.ceil((1 - trim) * r2.size - 1e-9)))
    return float(np.sqrt(np.mean(r2[:keep])))
