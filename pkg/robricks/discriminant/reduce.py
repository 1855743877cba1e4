# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 15:02
# @Author  : robricks
# @Desc    : dimension reduction ahead of a discriminant rule
import dataclasses
from typing import Any, Optional, Tuple

import numpy as np

from robricks import pca, pls
from robricks.core import events
from robricks.core.errors import InputError, UnsupportedError
from robricks.discriminant import DiscriminantModel, GroupedData
from robricks.discriminant.groups import estimate_groups
from robricks.discriminant.rules import _project, classify
from robricks.lib import linalg

REDUCERS = ("pca", "robust-pca", "pls", "robust-pls")


def svd_preprocess(X, tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    X = U S V' keeping every nonzero singular value; returns U S (n x r) and V (p x r)

    coefficients b found on U S map back to the variables as V b
    """
    X = linalg.as_matrix(X)
    U, s, Vt = np.linalg.svd(X, full_matrices=False)
    if tol is None:
        tol = max(X.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    r = int(np.sum(s > tol))
    return U[:, :r] * s[:r], Vt[:r].T


@dataclasses.dataclass
class Pipeline:
    """reducer fitted on the training rows, a rule fitted on the reducer's scores"""

    reducer: Any
    rule: DiscriminantModel
    kind: str
    meta: dict = dataclasses.field(default_factory=dict)

    @property
    def classes(self) -> tuple:
        return self.rule.classes

    def transform(self, X) -> np.ndarray:
        return _project(self.reducer, np.atleast_2d(np.asarray(X, dtype=float)))

    def classify(self, X) -> np.ndarray:
        single = np.asarray(X).ndim == 1
        out = classify(self.rule, self.transform(X))
        return out[0] if single else out

    def summary(self) -> str:
        return f"pipeline={self.kind} rule={self.rule.kind}"


def _reduce(data: GroupedData, reducer: str, dim: int, method: str, seed):
    if reducer == "pca":
        return pca.classical_pca(data.X, dim)
    if reducer == "robust-pca":
        if method == "spherical":
            return pca.spherical_pca(data.X, dim)
        if method == "maronna":
            return pca.maronna_pca(data.X, dim)
        if method == "pp":
            return pca.pp_pca(data.X, dim)
        return pca.covariance_pca(data.X, dim, estimator=method, seed=seed)
    if data.g != 2 and reducer == "robust-pls":
        raise UnsupportedError("robust PLS scores need two groups", g=data.g)
    if data.g == 2:
        y = (data.labels == 1).astype(float)
    else:
        y = np.eye(data.g)[data.labels]
    if reducer == "pls":
        return pls.pls_fit(data.X, y, dim)
    return pls.prm_fit(data.X, y, dim, pls.PRMConfig(seed=seed))


@events.fitting("pipeline")
def pipeline_fit(
    data: GroupedData,
    reducer: str = "robust-pca",
    dim: int = 2,
    classifier: str = "lda",
    estimator: str = "mcd",
    method: str = "spherical",
    priors=None,
    seed: Optional[int] = None,
) -> Pipeline:
    """
    reduce, then classify in the reduced space

    :param reducer: pca / robust-pca / pls / robust-pls; the PLS variants
        take the 0/1 group indicator as the response
    :param dim: components kept, below the smallest group size
    :param classifier: lda (pooled) or qda (per group)
    :param estimator: location/scatter estimator of the rule
    :param method: robust PCA flavour (spherical, maronna, pp, mcd, stahel-donoho, sign)
    """
    if reducer not in REDUCERS:
        raise InputError(f"unknown reducer: {reducer}", reducer=reducer)
    if classifier not in ("lda", "qda"):
        raise InputError(f"unknown classifier: {classifier}", classifier=classifier)
    if dim >= data.sizes.min():
        raise InputError("reduced dimension must stay below the smallest group size", dim=dim)

    model = _reduce(data, reducer, dim, method, seed)
    scores = _project(model, data.X)
    pooling = "pooled-average" if classifier == "lda" else "per-group"
    rule = estimate_groups(data.replace(scores), estimator, pooling, priors=priors, seed=seed)
    return Pipeline(model, rule, f"{reducer}+{classifier}", meta={"dim": dim, "estimator": estimator, "method": method})
