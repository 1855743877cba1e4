# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 15:40
# @Author  : robricks
# @Desc    : discriminant PLS and its sparse robust reweighted version
from typing import Optional, Union

import numpy as np
from loguru import logger

from robricks import pca, pls
from robricks.core import events
from robricks.core.errors import ConvergenceError, DegenerateError, InputError, UnsupportedError
from robricks.discriminant import DiscriminantModel, GroupedData, check_priors
from robricks.discriminant.groups import weighted_lda
from robricks.lib.scales import mad
from robricks.multivariate.location import coordinatewise_median
from robricks.pls.nipals import _check_eta, build, nipals
from robricks.pls.robust import PRMConfig, fair
from robricks.state import const

CODINGS = {"pm1": (1.0, -1.0), "01": (1.0, 0.0)}


def _codes(coding) -> tuple:
    if isinstance(coding, str):
        if coding not in CODINGS:
            raise InputError(f"unknown coding: {coding}", coding=coding)
        return CODINGS[coding]
    c0, c1 = map(float, coding)
    if c0 == c1:
        raise InputError("group codes must differ", codes=(c0, c1))
    return c0, c1


def _two_groups(data: GroupedData):
    if data.g != 2:
        raise UnsupportedError("two groups are required", g=data.g)


@events.fitting("dpls")
def dpls_fit(
    data: GroupedData,
    k: int,
    coding: Union[str, tuple] = "pm1",
    variant: str = "pls",
    priors=None,
    seed: Optional[int] = None,
) -> DiscriminantModel:
    """
    PLS on the coded group indicator, split at the midpoint of the codes

    the first group gets the first code; a prediction on the threshold
    goes to the first group

    :param variant: pls / sign / prm
    """
    _two_groups(data)
    c0, c1 = _codes(coding)
    y = np.where(data.labels == 0, c0, c1)
    if variant == "pls":
        model = pls.pls_fit(data.X, y, k)
    elif variant == "sign":
        model = pls.spatial_sign_pls(data.X, y, k)
    elif variant == "prm":
        model = pls.prm_fit(data.X, y, k, PRMConfig(seed=seed))
    else:
        raise InputError(f"unknown variant: {variant}", variant=variant)
    return DiscriminantModel(
        "DPLS",
        data.classes,
        check_priors(priors, data.sizes),
        np.array([data.group(j).mean(axis=0) for j in range(2)]),
        threshold=(c0 + c1) / 2,
        codes=(c0, c1),
        reducer=model,
        meta={"variant": variant, "k": k},
    )


def dpls_classify(model: DiscriminantModel, X) -> np.ndarray:
    if model.kind != "DPLS":
        raise InputError("not a discriminant PLS model", kind=model.kind)
    return model.classify(X)


def _robust_scale(X: np.ndarray) -> np.ndarray:
    s = np.array([mad(col, consistent=True).value for col in X.T])
    return np.where(s > 0, s, 1.0)


def _pca_weights(Z: np.ndarray, q: int, c: float) -> np.ndarray:
    """Fair weights of robust Mahalanobis distances in a spherical PCA space"""
    q = max(1, min(q, Z.shape[0] - 1, Z.shape[1]))
    with events.muted:
        model = pca.spherical_pca(Z, q)
    lam = model.eigenvalues
    keep = lam > 1e-12 * max(lam.max(), 1e-300)
    if not np.any(keep):
        return np.ones(Z.shape[0])
    T = model.scores(Z)[:, keep]
    d = np.sqrt(np.sum(T**2 / lam[keep], axis=1))
    scale = np.median(d)
    return fair(d / scale, c) if scale > 0 else np.ones(Z.shape[0])


def _score_weights(T, labels, c) -> np.ndarray:
    w = np.ones(T.shape[0])
    for j in range(2):
        mask = labels == j
        Tj = T[mask]
        d = np.linalg.norm(Tj - coordinatewise_median(Tj), axis=1)
        scale = np.median(d)
        if scale > 0:
            w[mask] = fair(d / scale, c)
    return w


def _label_weights(t1, labels, c) -> np.ndarray:
    # 第一成分上到本组稳健中心的距离
    w = np.ones(t1.size)
    for j in range(2):
        mask = labels == j
        center = np.median(t1[mask])
        scale = mad(t1[mask], consistent=True).value
        if scale > 0:
            w[mask] = fair((t1[mask] - center) / scale, c)
    return w


@events.fitting("sprm-da")
def sprm_da_fit(
    data: GroupedData,
    k: int,
    eta: float,
    cfg: PRMConfig = None,
    coding: Union[str, tuple] = "pm1",
    priors=None,
) -> DiscriminantModel:
    """
    sparse robust discriminant PLS

    1. group medians and per-group consistent MADs give the initial weights
       (Fair weights of robust distances in each group's spherical PCA space)
       and one affine map: the mean of the two group medians and the
       size-weighted MAD
    2. sparse NIPALS on the sqrt(w)-scaled coded data
    3. new weights: per-group score distances times the distance of the
       first score to its own group's robust center, both through the Fair
       function, multiplied and floored at 1e-6
    4. steps 2-3 repeat until the coefficients settle, then weighted LDA on
       the scores
    """
    _two_groups(data)
    eta = _check_eta(eta)
    cfg = cfg or PRMConfig()
    if np.any(data.sizes < 4):
        raise InputError("each group needs at least four rows", sizes=data.sizes.tolist())
    c0, c1 = _codes(coding)
    labels = data.labels
    y = np.where(labels == 0, c0, c1)

    centers = np.array([coordinatewise_median(data.group(j)) for j in range(2)])
    scales = np.array([_robust_scale(data.group(j)) for j in range(2)])
    w = np.empty(data.n)
    for j in range(2):
        mask = labels == j
        w[mask] = _pca_weights((data.X[mask] - centers[j]) / scales[j], k + 1, cfg.c)
    x_center = centers.mean(axis=0)
    x_scale = data.sizes @ scales / data.n
    Z = (data.X - x_center) / x_scale

    B = None
    model = None
    for iteration in range(1, cfg.max_iter + 1):
        w = np.maximum(w, const.WEIGHT_FLOOR)
        for j in range(2):
            if np.all(w[labels == j] <= const.WEIGHT_FLOOR):
                raise DegenerateError("every weight of a group hit the floor", group=j)
        mz = w @ Z / w.sum()
        my = w @ y / w.sum()
        root = np.sqrt(w)[:, None]
        comp = nipals(root * (Z - mz), root * (y - my)[:, None], k, eta)
        comp.scores = (Z - mz) @ comp.rotations
        model = build(
            comp,
            x_center + mz * x_scale,
            [my],
            w,
            True,
            "sprm-da",
            eta=eta,
            x_scale=x_scale,
        )
        T = comp.scores
        new_w = _score_weights(T, labels, cfg.c) * _label_weights(T[:, 0], labels, cfg.c)
        B_new = comp.coefficients[:, 0]
        change = np.inf if B is None else np.linalg.norm(B_new - B) / max(np.linalg.norm(B), 1e-300)
        B = B_new
        events.emit(const.ON_ITERATION, "sprm-da", iteration=iteration, change=change)
        if change < cfg.tol:
            logger.debug(f"[sprm-da] converged after {iteration} rounds")
            break
        w = new_w
    else:
        raise ConvergenceError("sprm-da reweighting did not converge", last=model, iterations=cfg.max_iter)

    final = np.maximum(new_w, const.WEIGHT_FLOOR)
    rule = weighted_lda(model.transform_scores(data.X), labels, w, data.classes, check_priors(priors, data.sizes))
    return DiscriminantModel(
        "SPRMDA",
        data.classes,
        rule.priors,
        centers,
        codes=(c0, c1),
        reducer=model,
        inner=rule,
        meta={"weights": w, "final_weights": final, "iterations": iteration, "support": model.support},
    )
