# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 10:02
# @Author  : robricks
# @Desc    : spatial-sign PLS and partial robust M regression (dense and sparse)
import dataclasses
import math
from typing import Optional

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.errors import ConvergenceError, InputError
from robricks.lib import linalg
from robricks.lib.scales import mad
from robricks.multivariate.location import coordinatewise_median
from robricks.multivariate.signcov import spatial_signs
from robricks.multivariate.stahel import outlyingness
from robricks.pls import PLSModel
from robricks.pls.nipals import _check_eta, _check_k, _responses, build, nipals
from robricks.state import G, const


@dataclasses.dataclass
class PRMConfig:
    """
    :param c: Fair tuning constant of the residual and the score weights
    :param quantile: distances below the chi-square quantile keep weight 1, Fair acts on the excess
    :param tol: relative coefficient change that ends the reweighting
    :param max_iter: reweighting rounds
    :param start: ``"sd"`` (outlyingness of X with spatial-sign residuals) or ``"sign"`` (residuals only)
    :param seed: seed of the outlyingness directions
    """

    c: float = const.FAIR_C
    quantile: float = const.PRM_QUANTILE
    tol: float = const.PRM_TOL
    max_iter: int = const.PRM_MAX_ITER
    start: str = "sd"
    seed: Optional[int] = None

    def __post_init__(self):
        if self.c <= 0:
            raise InputError("Fair constant must be positive", c=self.c)
        if not 0.5 <= self.quantile < 1:
            raise InputError("quantile must lie in [0.5, 1)", quantile=self.quantile)
        if self.start not in ("sd", "sign"):
            raise InputError("start must be 'sd' or 'sign'", start=self.start)


def fair(z, c: float = const.FAIR_C) -> np.ndarray:
    return 1.0 / (1.0 + np.abs(np.asarray(z, dtype=float) / c)) ** 2


def fair_beyond(z, df: int, c: float = const.FAIR_C, quantile: float = const.PRM_QUANTILE) -> np.ndarray:
    """Fair weight of the part of ``z`` above sqrt(chi2_df(quantile)); z is on the scale of a chi_df distance"""
    cutoff = math.sqrt(linalg.chi2_quantile(quantile, df))
    return fair(np.maximum(np.abs(np.asarray(z, dtype=float)) - cutoff, 0.0), c)


def _univariate(y, n):
    Y, univariate = _responses(y, n)
    if not univariate and Y.shape[1] != 1:
        raise InputError("partial robust M regression takes a univariate response", q=Y.shape[1])
    return Y[:, 0]


@events.fitting("sign-pls")
def spatial_sign_pls(X, y, k: int) -> PLSModel:
    """
    PLS on the spatial signs of the median-centered rows of X

    y is only centered (by its median); new rows go through the same
    centering and sign transform before the coefficients apply
    """
    X = linalg.as_matrix(X)
    Y, univariate = _responses(y, X.shape[0])
    mx, my = coordinatewise_median(X), np.median(Y, axis=0)
    S = spatial_signs(X, mx)
    k = _check_k(k, S)
    comp = nipals(S, Y - my, k)
    return build(
        comp, mx, my, np.ones(X.shape[0]), univariate, "sign-pls", transform="sign", centering="median"
    )


def residual_weights(r: np.ndarray, c: float, quantile: float = const.PRM_QUANTILE) -> np.ndarray:
    center = np.median(r)
    sigma = mad(r, consistent=True).value
    if sigma == 0:
        # more than half the residuals coincide
        tiny = 1e-12 * max(1.0, float(np.max(np.abs(r))))
        return np.where(np.abs(r - center) <= tiny, 1.0, fair(np.inf, c))
    return fair_beyond((r - center) / sigma, 1, c, quantile)


def _median_scaled(d: np.ndarray, df: int) -> np.ndarray:
    """d / med(d) mapped onto the chi_df scale, zeros (full weight) when the median vanishes"""
    scale = np.median(d)
    if scale == 0:
        return np.zeros_like(d)
    return d / scale * math.sqrt(linalg.chi2_quantile(0.5, df))


def score_weights(T: np.ndarray, c: float, quantile: float = const.PRM_QUANTILE) -> np.ndarray:
    """distances to the coordinatewise median of the scores, each component divided by its consistent MAD"""
    spread = np.array([mad(col, consistent=True).value for col in T.T])
    spread[spread == 0] = 1.0
    d = np.linalg.norm((T - coordinatewise_median(T)) / spread, axis=1)
    return fair_beyond(_median_scaled(d, T.shape[1]), T.shape[1], c, quantile)


def _start_weights(X, y, k, cfg: PRMConfig) -> np.ndarray:
    with events.muted:
        sign = spatial_sign_pls(X, y, k)
    w = residual_weights(y - sign.predict(X), cfg.c, cfg.quantile)
    if cfg.start == "sd":
        out = outlyingness(X, seed=G.seed if cfg.seed is None else cfg.seed)
        w = w * fair_beyond(_median_scaled(out, 1), 1, cfg.c, cfg.quantile)
    return w


def _weighted(X, y, w, k, eta, keep=None):
    mx = w @ X / w.sum()
    my = w @ y / w.sum()
    root = np.sqrt(w)[:, None]
    Xc = root * (X - mx)
    if keep is not None:
        Xc[:, ~keep] = 0.0
    comp = nipals(Xc, root * (y - my)[:, None], k, eta)
    comp.scores = (X - mx) @ comp.rotations
    return comp, mx, my


def _reweighted(X, y, k: int, eta: float, cfg: PRMConfig, method: str) -> PLSModel:
    cfg = cfg or PRMConfig()
    X = linalg.as_matrix(X)
    y = _univariate(y, X.shape[0])
    k = _check_k(k, X - coordinatewise_median(X))

    w = _start_weights(X, y, k, cfg)
    B, support, keep = None, None, None
    seen = set()
    model = None
    for iteration in range(1, cfg.max_iter + 1):
        comp, mx, my = _weighted(X, y, w, k, eta, keep)
        model = build(comp, mx, [my], w, True, method, eta=eta, iterations=iteration, fair_c=cfg.c)
        r = y - model.predict(X)
        new_w = residual_weights(r, cfg.c, cfg.quantile) * score_weights(comp.scores, cfg.c, cfg.quantile)

        B_new = comp.coefficients[:, 0]
        support_new = np.flatnonzero(B_new)
        change = np.inf if B is None else np.linalg.norm(B_new - B) / max(np.linalg.norm(B), 1e-300)
        stable = support is not None and np.array_equal(support, support_new)
        events.emit(const.ON_ITERATION, method, iteration=iteration, change=change)
        if change < cfg.tol and stable:
            logger.debug(f"[{method}] converged after {iteration} rounds")
            break
        if support is not None and not stable and (change < cfg.tol or tuple(support_new) in seen):
            # a variable at the threshold flips in and out, from here on the support only shrinks
            kept = np.intersect1d(support, support_new)
            keep = np.zeros(X.shape[1], dtype=bool)
            keep[kept if kept.size else support_new] = True
            logger.debug(f"[{method}] support frozen to {int(keep.sum())} variables in round {iteration}")
        seen.add(tuple(support_new))
        B, support = B_new, support_new
        w = new_w
    else:
        raise ConvergenceError(f"{method} reweighting did not converge", last=model, iterations=cfg.max_iter)

    model.meta.update(
        final_weights=new_w,
        start=cfg.start,
        weighting="fair",
        quantile=cfg.quantile,
        centering="weighted-mean",
        support=support_new,
        support_frozen=keep is not None,
    )
    return model


@events.fitting("prm")
def prm_fit(X, y, k: int, cfg: PRMConfig = None) -> PLSModel:
    """
    partial robust M regression

    weighted PLS on sqrt(w)-scaled rows, then case weights
    w_i = f(r_i / sigma_r) * f(d_i / med d) from residuals r and score
    distances d to the coordinatewise median of the scores. f is 1 up to the
    chi-square cutoff of ``cfg.quantile`` and Fair on the excess, so clean
    cases keep full weight. The model is not nested in k.
    """
    return _reweighted(X, y, k, 0.0, cfg, "prm")


@events.fitting("sprm")
def sprm_fit(X, y, k: int, eta: float, cfg: PRMConfig = None) -> PLSModel:
    """sparse partial robust M: the reweighting of prm_fit around sparse NIPALS"""
    return _reweighted(X, y, k, _check_eta(eta), cfg, "sprm")
