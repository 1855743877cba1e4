# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 10:31
# @Author  : robricks
# @Desc    : univariate robust scales
import dataclasses
import math
from typing import Literal, Optional, Tuple

import numpy as np
from loguru import logger
from scipy import integrate, optimize, stats

from robricks.core.errors import ConvergenceError, InputError
from robricks.lib import streams
from robricks.lib.rho import RhoFamily
from robricks.state import const

__all__ = (
    "ScaleEstimate",
    "mad",
    "quantile_scale",
    "trimmed_squares_scale",
    "m_scale",
    "consistency_constant",
    "monte_carlo_constant",
)


@dataclasses.dataclass(frozen=True)
class ScaleEstimate:
    value: float
    consistency_factor: float = 1.0
    method: str = ""
    h: Optional[int] = None
    delta: Optional[float] = None
    degenerate: bool = False
    iterations: int = 0

    def __post_init__(self):
        if not self.value >= 0:
            raise InputError("scale must be nonnegative", value=self.value)

    def __float__(self):
        return float(self.value)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _vector(values, name="values") -> np.ndarray:
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise InputError(f"{name} is empty")
    if not np.all(np.isfinite(values)):
        raise InputError(f"{name} contains non-finite entries")
    return values


def _check_h(h: int, n: int) -> int:
    if not (isinstance(h, (int, np.integer)) and 1 <= h <= n):
        raise InputError(f"h must lie in [1, {n}]", h=h, n=n)
    return int(h)


def mad(values, consistent: bool = False) -> ScaleEstimate:
    """
    median absolute deviation from the median

    :param values: sample
    :param consistent: divide by 0.675 so the result estimates the normal SD
    """
    values = _vector(values)
    raw = float(np.median(np.abs(values - np.median(values))))
    if consistent:
        return ScaleEstimate(raw / const.MAD_CONSTANT, const.MAD_CONSTANT, "mad")
    return ScaleEstimate(raw, 1.0, "mad")


def quantile_scale(r, h: int) -> ScaleEstimate:
    """h-th smallest absolute residual"""
    r = _vector(r, "residuals")
    h = _check_h(h, r.size)
    return ScaleEstimate(float(np.sort(np.abs(r))[h - 1]), 1.0, "quantile", h=h)


def trimmed_squares_scale(r, h: int) -> ScaleEstimate:
    """sqrt of the h smallest squared residuals summed and divided by n"""
    r = _vector(r, "residuals")
    h = _check_h(h, r.size)
    sq = np.sort(r**2)[:h]
    return ScaleEstimate(float(math.sqrt(sq.sum() / r.size)), 1.0, "trimmed", h=h)


def m_scale(
    r,
    family: RhoFamily = None,
    delta: float = 0.5,
    tol: float = const.SCALE_TOL,
    max_iter: int = const.SCALE_MAX_ITER,
) -> ScaleEstimate:
    """
    M-scale: sigma solving mean(rho(r / sigma)) = delta

    solved by the weighted-RMSE fixed point

        sigma**2 <- sum(W_sigma(r_i / sigma) * r_i**2) / (n * delta)

    started at the median of |r|. Residual vectors that leave the equation
    without a positive root (all zero, or too few nonzero entries for a
    bounded rho) return 0 flagged as degenerate.

    :param r: residuals
    :param family: rho family, bisquare(1) by default
    :param delta: right-hand side, in (0, rho(inf))
    :param tol: relative tolerance on sigma
    :param max_iter: iteration cap
    """
    family = RhoFamily.from_spec(family or RhoFamily.bisquare(1.0))
    r = _vector(r, "residuals")
    n = r.size
    if not 0 < delta < family.rho_max:
        raise InputError(f"delta must lie in (0, {family.rho_max})", delta=delta)

    a = np.abs(r)
    nonzero = int(np.count_nonzero(a))
    if nonzero == 0 or (family.bounded and nonzero <= delta * n * (1 - 1e-12)):
        return ScaleEstimate(0.0, 1.0, f"m:{family.spec}", delta=delta, degenerate=True)

    if family.kind == "indicator":
        value = float(np.quantile(a, 1 - delta))
        return ScaleEstimate(value, 1.0, "m:indicator", delta=delta)

    sigma = float(np.median(a))
    if sigma <= 0:
        sigma = float(np.mean(a))

    for iteration in range(1, max_iter + 1):
        updated = math.sqrt(float(np.sum(family.scale_weight(r / sigma) * r**2)) / (n * delta))
        if abs(updated - sigma) <= tol * sigma:
            logger.debug(f"[m_scale] {family.spec} converged after {iteration} iterations")
            return ScaleEstimate(updated, 1.0, f"m:{family.spec}", delta=delta, iterations=iteration)
        sigma = updated

    raise ConvergenceError(
        "m_scale did not converge",
        last=ScaleEstimate(sigma, 1.0, f"m:{family.spec}", delta=delta, iterations=max_iter),
        iterations=max_iter,
    )


# 正态模型下的已知常数: (kind, k, delta) -> c
TABULATED = {
    ("indicator", None, 0.5): const.MAD_CONSTANT,
    ("quadratic", None, 1.0): 1.0,
}


def _normal_root(family: RhoFamily, delta: float) -> float:
    # E rho(Z / c) = delta
    def expected(c):
        if family.kind == "indicator":
            return 2 * stats.norm.sf(c)
        if family.kind == "quadratic":
            return 1 / c**2
        if family.kind == "absolute":
            return math.sqrt(2 / math.pi) / c

        return integrate.quad(
            lambda z: float(family.rho(z / c)) * stats.norm.pdf(z), -np.inf, np.inf
        )[0]

    return optimize.brentq(lambda c: expected(c) - delta, 1e-3, 1e3, xtol=1e-12)


def monte_carlo_constant(
    family: RhoFamily,
    delta: float,
    draws: int = const.MC_DRAWS,
    seed: int = const.MC_SEED,
    batches: int = 20,
) -> Tuple[float, float]:
    """
    consistency constant from standard-normal draws

    :return: (constant, standard error from batch means)
    """
    family = RhoFamily.from_spec(family)
    z = streams.stream(seed).standard_normal(draws)
    value = m_scale(z, family, delta).value
    parts = [m_scale(chunk, family, delta).value for chunk in np.array_split(z, batches)]
    se = float(np.std(parts, ddof=1) / math.sqrt(batches))
    return value, se


def consistency_constant(
    family: RhoFamily,
    delta: float,
    method: Literal["table", "integrate", "monte-carlo"] = "table",
    **kwargs,
) -> float:
    """
    c such that sigma_hat / c estimates the standard deviation at the normal model

    ``table`` returns the tabulated constants exactly and integrates anything
    else. bisquare(1) with delta = 0.5 is integrated,
    about 1.548.

    :param family: rho family
    :param delta: M-scale right-hand side
    :param method: table / integrate / monte-carlo
    :param kwargs: passed to ``monte_carlo_constant``
    """
    family = RhoFamily.from_spec(family)
    if method == "table":
        key = (family.kind, family.k, float(delta))
        if key in TABULATED:
            return TABULATED[key]
        method = "integrate"

    if method == "integrate":
        return float(_normal_root(family, delta))

    if method == "monte-carlo":
        value, se = monte_carlo_constant(family, delta, **kwargs)
        logger.debug(f"[consistency] {family.spec} delta={delta}: {value:.5f} +- {se:.5f}")
        return value

    raise InputError(f"unknown method: {method}", method=method)
