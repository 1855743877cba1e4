# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 14:15
# @Author  : robricks
# @Desc    : quadratic, linear and Fisher discriminant rules
from typing import Optional, Tuple

import numpy as np
from scipy import linalg as sla

from robricks.core import events
from robricks.core.errors import InputError, SingularityError
from robricks.discriminant import DiscriminantModel, GroupedData, check_priors
from robricks.discriminant.groups import estimate
from robricks.lib import linalg
from robricks.lib.linalg import fix_signs


def _rows(model: DiscriminantModel, X) -> Tuple[np.ndarray, bool]:
    x = np.asarray(X, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    if X.shape[1] != model.means.shape[1]:
        raise InputError("dimension does not match the model", size=X.shape[1], p=model.means.shape[1])
    if not np.all(np.isfinite(X)):
        raise InputError("rows have non-finite entries")
    return X, single


def _out(scores: np.ndarray, single: bool) -> np.ndarray:
    return scores[0] if single else scores


def qda_scores(model: DiscriminantModel, X) -> np.ndarray:
    """
    d_j = -1/2 ln det S_j - 1/2 (x - m_j)' S_j^-1 (x - m_j) + ln p_j

    the log-determinant is the normal log-density term, a model without
    per-group scatters uses the pooled one for every group
    """
    X, single = _rows(model, X)
    scatters = model.scatters if model.scatters is not None else [model.pooled] * model.g
    scores = np.empty((X.shape[0], model.g))
    for j, (mu, S) in enumerate(zip(model.means, scatters)):
        Z = X - mu
        inv = linalg.inverse(S, f"scatter of group {j}")
        d2 = np.einsum("ij,jk,ik->i", Z, inv, Z)
        scores[:, j] = -0.5 * linalg.logdet(S, f"scatter of group {j}") - 0.5 * d2 + np.log(model.priors[j])
    return _out(scores, single)


def lda_scores(model: DiscriminantModel, X) -> np.ndarray:
    """d_j = m_j' S^-1 x - 1/2 m_j' S^-1 m_j + ln p_j with the pooled scatter S"""
    if model.pooled is None:
        raise InputError("linear scores need a pooled scatter", kind=model.kind)
    X, single = _rows(model, X)
    inv = linalg.inverse(model.pooled, "pooled scatter")
    A = model.means @ inv
    scores = X @ A.T - 0.5 * np.einsum("jk,jk->j", A, model.means) + np.log(model.priors)
    return _out(scores, single)


@events.fitting("fisher")
def fisher_fit(data: GroupedData, estimator: str = "classical", priors=None, seed: Optional[int] = None) -> DiscriminantModel:
    """
    eigenvectors of W^-1 B with positive eigenvalues, scaled to v' W v = 1

    B = sum p_j (m_j - m)(m_j - m)', W = sum p_j S_j, m = sum p_j m_j
    """
    priors = check_priors(priors, data.sizes)
    fits = [estimate(data.group(j), estimator, seed) for j in range(data.g)]
    means = np.array([f.location for f in fits])
    scatters = np.array([f.scatter for f in fits])
    center = priors @ means
    D = means - center
    B = (D * priors[:, None]).T @ D
    W = linalg.symmetrize(np.einsum("j,jkl->kl", priors, scatters))
    try:
        values, vectors = sla.eigh(linalg.symmetrize(B), W)
    except sla.LinAlgError as e:
        raise SingularityError("within-group scatter is not positive definite") from e
    order = np.argsort(values)[::-1]
    values, vectors = values[order], vectors[:, order]
    limit = min(data.g - 1, data.p)
    keep = values > 1e-10 * max(values[0], 1e-300)
    l = min(limit, int(keep.sum()))
    V = fix_signs(vectors[:, :l]) if l else np.zeros((data.p, 0))
    return DiscriminantModel(
        "Fisher",
        data.classes,
        priors,
        means,
        scatters=scatters,
        pooled=W,
        basis=V,
        meta={"eigenvalues": values[:l], "estimator": estimator, "between": B},
    )


def fisher_scores(model: DiscriminantModel, X) -> np.ndarray:
    """d_j = ((x - m_j)' V V' (x - m_j) - 2 ln p_j)^(1/2); the smallest wins"""
    if model.basis is None:
        raise InputError("model has no Fisher basis", kind=model.kind)
    X, single = _rows(model, X)
    scores = np.empty((X.shape[0], model.g))
    for j, mu in enumerate(model.means):
        proj = (X - mu) @ model.basis
        scores[:, j] = np.sqrt(np.sum(proj**2, axis=1) - 2 * np.log(model.priors[j]))
    return _out(scores, single)


def _project(reducer, X) -> np.ndarray:
    if hasattr(reducer, "transform_scores"):
        return reducer.transform_scores(X)
    return reducer.scores(X)


def classify(model: DiscriminantModel, X) -> np.ndarray:
    """group codes, ties go to the lowest group index"""
    single = np.asarray(X).ndim == 1
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if model.kind == "QDA":
        out = np.argmax(qda_scores(model, X), axis=1)
    elif model.kind == "LDA":
        out = np.argmax(lda_scores(model, X), axis=1)
    elif model.kind == "Fisher":
        out = np.argmin(fisher_scores(model, X), axis=1)
    elif model.kind == "DPLS":
        c0, c1 = model.codes
        y_hat = np.atleast_1d(model.reducer.predict(X))
        out = np.where((y_hat - model.threshold) * np.sign(c0 - c1) >= 0, 0, 1)
    elif model.kind == "SPRMDA":
        out = classify(model.inner, _project(model.reducer, X))
    else:
        raise InputError(f"unknown model kind: {model.kind}", kind=model.kind)
    out = np.asarray(out, dtype=int)
    return out[0] if single else out


def decision_grid(model, xlim, ylim, n: int = 100) -> list:
    """classified points of an n x n grid over a two-dimensional feature space"""
    xs = np.linspace(*xlim, n)
    ys = np.linspace(*ylim, n)
    gx, gy = np.meshgrid(xs, ys)
    points = np.column_stack([gx.ravel(), gy.ravel()])
    groups = model.classify(points)
    return [{"x": x, "y": y, "group": int(j)} for (x, y), j in zip(points, groups)]


def confusion_matrix(truth, predicted, g: Optional[int] = None) -> np.ndarray:
    """counts[i, j]: rows of group i classified as j"""
    truth = np.asarray(truth, dtype=int)
    predicted = np.asarray(predicted, dtype=int)
    if truth.shape != predicted.shape:
        raise InputError("label vectors differ in length")
    g = g or int(max(truth.max(), predicted.max())) + 1
    counts = np.zeros((g, g), dtype=int)
    np.add.at(counts, (truth, predicted), 1)
    return counts


def classify_fisher(model: DiscriminantModel, X) -> np.ndarray:
    if model.kind != "Fisher":
        raise InputError("not a Fisher model", kind=model.kind)
    return classify(model, X)
