# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 09:20
# @Author  : robricks
# @Desc    : NIPALS, kernel (covariance) and sparse NIPALS partial least squares
import dataclasses
from typing import Optional, Tuple

import numpy as np

from robricks.core import events
from robricks.core.errors import InputError, SparsityError
from robricks.lib import linalg
from robricks.pls import PLSModel
from robricks.regression.sparse import soft


@dataclasses.dataclass
class Components:
    weights: np.ndarray
    rotations: np.ndarray
    loadings: np.ndarray
    y_loadings: np.ndarray
    scores: np.ndarray
    coefficients: np.ndarray


def _responses(Y, n: int) -> Tuple[np.ndarray, bool]:
    Y = np.asarray(Y, dtype=float)
    univariate = Y.ndim == 1
    Y = Y.reshape(-1, 1) if univariate else Y
    if Y.shape[0] != n:
        raise InputError("X and Y row counts differ", n=n, rows=Y.shape[0])
    if not np.all(np.isfinite(Y)):
        raise InputError("Y has non-finite entries")
    return Y, univariate


def _direction(S: np.ndarray, eta: float, component: int) -> np.ndarray:
    """weighting vector from the cross-covariance block, soft-thresholded at eta * max|w|"""
    if S.shape[1] == 1:
        w = S[:, 0].copy()
    else:
        U, _, _ = np.linalg.svd(S, full_matrices=False)
        w = U[:, 0]
        j = np.argmax(np.abs(w))
        w = w if w[j] >= 0 else -w
    if eta > 0:
        w = soft(w, eta * np.max(np.abs(w)))
    norm = np.linalg.norm(w)
    if norm == 0:
        if eta > 0:
            raise SparsityError("every weight was thresholded to zero", eta=eta, component=component)
        raise InputError("cross-covariance vanishes, too many components", component=component)
    return w / norm


def _check_eta(eta: float) -> float:
    if not 0 <= eta < 1:
        raise InputError("eta must lie in [0, 1)", eta=eta)
    return float(eta)


def nipals(Xc: np.ndarray, Yc: np.ndarray, k: int, eta: float = 0.0) -> Components:
    """
    NIPALS with deflation of X and Y on already centered (or row-weighted) data

    rotations R = W (P'W)^-1 give the scores from the undeflated data, so
    zero rows of W stay zero in the coefficients R C'
    """
    n, p = Xc.shape
    E, F = Xc.copy(), Yc.copy()
    W, P, C, T = (np.zeros((p, k)), np.zeros((p, k)), np.zeros((Yc.shape[1], k)), np.zeros((n, k)))
    for h in range(k):
        w = _direction(E.T @ F, eta, h + 1)
        t = E @ w
        tt = t @ t
        if tt <= np.finfo(float).eps * max(1.0, np.sum(Xc**2)):
            raise InputError("component has zero variance, k exceeds the rank", component=h + 1)
        W[:, h], T[:, h] = w, t
        P[:, h] = E.T @ t / tt
        C[:, h] = F.T @ t / tt
        E -= np.outer(t, P[:, h])
        F -= np.outer(t, C[:, h])
    R = W @ np.linalg.solve(P.T @ W, np.eye(k))
    return Components(W, R, P, C, T, R @ C.T)


def _check_k(k, Xc) -> int:
    if k < 1:
        raise InputError("k must be positive", k=k)
    r = linalg.rank(Xc)
    if k > r:
        raise InputError(f"k must not exceed the rank {r} of the centered data", k=k, rank=r)
    return int(k)


def build(
    comp: Components,
    x_center,
    y_center,
    case_weights,
    univariate: bool,
    method: str,
    eta: float = 0.0,
    x_scale=None,
    transform: str = "none",
    **meta,
) -> PLSModel:
    x_center = np.asarray(x_center, dtype=float)
    return PLSModel(
        x_center=x_center,
        x_scale=np.ones_like(x_center) if x_scale is None else np.asarray(x_scale, dtype=float),
        y_center=np.atleast_1d(np.asarray(y_center, dtype=float)),
        weights=comp.weights,
        rotations=comp.rotations,
        loadings=comp.loadings,
        scores=comp.scores,
        coefficients=comp.coefficients,
        case_weights=np.asarray(case_weights, dtype=float),
        n_components=comp.weights.shape[1],
        eta=eta,
        method=method,
        transform=transform,
        univariate=univariate,
        meta={"y_loadings": comp.y_loadings, **meta},
    )


@events.fitting("pls")
def pls_fit(X, Y, k: int) -> PLSModel:
    """
    mean-centered NIPALS PLS

    the h-th weighting vector maximizes cov(Xa, y) subject to score
    orthogonality with the earlier components; for univariate y and k=1
    it is X'y / |X'y|
    """
    X = linalg.as_matrix(X)
    Y, univariate = _responses(Y, X.shape[0])
    mx, my = X.mean(axis=0), Y.mean(axis=0)
    Xc = X - mx
    k = _check_k(k, Xc)
    comp = nipals(Xc, Y - my, k)
    return build(comp, mx, my, np.ones(X.shape[0]), univariate, "pls")


@events.fitting("snipls")
def snipls_fit(X, y, k: int, eta: float) -> PLSModel:
    """
    sparse NIPALS: every weighting vector is soft-thresholded at
    eta * max|w| before normalization; eta=0 is plain PLS
    """
    eta = _check_eta(eta)
    X = linalg.as_matrix(X)
    Y, univariate = _responses(y, X.shape[0])
    mx, my = X.mean(axis=0), Y.mean(axis=0)
    Xc = X - mx
    k = _check_k(k, Xc)
    comp = nipals(Xc, Y - my, k, eta)
    model = build(comp, mx, my, np.ones(X.shape[0]), univariate, "snipls", eta=eta)
    model.meta["support"] = model.support
    return model


@events.fitting("pls-covariance")
def pls_from_covariance(
    Sxx,
    Sxy,
    k: int,
    eta: float = 0.0,
    x_center: Optional[np.ndarray] = None,
    y_center: Optional[np.ndarray] = None,
) -> PLSModel:
    """
    PLS computed from the X block and the X-Y block of the joint covariance

    kernel form of NIPALS: the cross-covariance block is deflated by
    p_h c_h' t_h't_h, which reproduces the data-based solution exactly
    """
    eta = _check_eta(eta)
    Sxx = linalg.symmetrize(linalg.as_matrix(Sxx, "Sxx"))
    Sxy = np.asarray(Sxy, dtype=float)
    univariate = Sxy.ndim == 1
    S = Sxy.reshape(-1, 1).copy() if univariate else Sxy.copy()
    p = Sxx.shape[0]
    if Sxx.shape != (p, p) or S.shape[0] != p:
        raise InputError("covariance blocks do not conform", sxx=Sxx.shape, sxy=S.shape)
    if not 1 <= k <= p:
        raise InputError(f"k must lie in [1, {p}]", k=k)

    W, R, P, C = (np.zeros((p, k)), np.zeros((p, k)), np.zeros((p, k)), np.zeros((S.shape[1], k)))
    for h in range(k):
        w = _direction(S, eta, h + 1)
        r = w.copy()
        for j in range(h):
            r -= (P[:, j] @ w) * R[:, j]
        tt = r @ Sxx @ r
        if tt <= np.finfo(float).eps * max(1.0, np.trace(Sxx)):
            raise InputError("component has zero variance, k exceeds the rank", component=h + 1)
        W[:, h], R[:, h] = w, r
        P[:, h] = Sxx @ r / tt
        C[:, h] = S.T @ r / tt
        S -= tt * np.outer(P[:, h], C[:, h])

    comp = Components(W, R, P, C, np.zeros((0, k)), R @ C.T)
    x_center = np.zeros(p) if x_center is None else x_center
    y_center = np.zeros(S.shape[1]) if y_center is None else y_center
    return build(comp, x_center, y_center, np.zeros(0), univariate, "pls-covariance", eta=eta)
