# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 13:10
# @Author  : robricks
# @Desc    : discriminant analysis, classical and robust
import dataclasses
from typing import Any, Optional

import numpy as np

from robricks.core.errors import InputError
from robricks.lib import linalg


@dataclasses.dataclass
class GroupedData:
    """
    rows of X with integer group codes 0..g-1; ``classes`` keeps the
    original label of every code
    """

    X: np.ndarray
    labels: np.ndarray
    classes: Optional[tuple] = None

    def __post_init__(self):
        self.X = linalg.as_matrix(self.X)
        labels = np.asarray(self.labels)
        if labels.shape != (self.X.shape[0],):
            raise InputError("one label per row is required", rows=self.X.shape[0], labels=labels.size)
        if labels.size and not np.issubdtype(labels.dtype, np.integer):
            raise InputError("labels must be integer group codes, use GroupedData.from_labels")
        self.labels = labels.astype(int)
        g = len(self.classes) if self.classes is not None else int(self.labels.max()) + 1
        if np.any(self.labels < 0) or np.any(self.labels >= g):
            raise InputError("labels out of range", g=g)
        sizes = np.bincount(self.labels, minlength=g)
        if np.any(sizes == 0):
            raise InputError("every group needs at least one row", sizes=sizes.tolist())
        self.classes = tuple(self.classes) if self.classes is not None else tuple(range(g))

    @classmethod
    def from_labels(cls, X, labels) -> "GroupedData":
        classes, codes = np.unique(np.asarray(labels), return_inverse=True)
        return cls(X, codes.astype(int), tuple(classes.tolist()))

    @property
    def g(self) -> int:
        return len(self.classes)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.g)

    def group(self, j: int) -> np.ndarray:
        return self.X[self.labels == j]

    def replace(self, X) -> "GroupedData":
        return GroupedData(X, self.labels, self.classes)

    def subset(self, rows) -> "GroupedData":
        return GroupedData(self.X[rows], self.labels[rows], self.classes)


@dataclasses.dataclass
class DiscriminantModel:
    """
    kind is one of LDA, QDA, Fisher, DPLS, SPRMDA

    ``reducer`` maps raw rows to the space the rule lives in (PCA or PLS
    scores) and ``inner`` is the rule fitted there
    """

    kind: str
    classes: tuple
    priors: np.ndarray
    means: np.ndarray
    scatters: Optional[np.ndarray] = None
    pooled: Optional[np.ndarray] = None
    basis: Optional[np.ndarray] = None
    threshold: Optional[float] = None
    codes: Optional[tuple] = None
    reducer: Any = None
    inner: Optional["DiscriminantModel"] = None
    meta: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        self.priors = np.asarray(self.priors, dtype=float)
        if np.any(self.priors <= 0):
            raise InputError("priors must be positive", priors=self.priors.tolist())
        self.priors = self.priors / self.priors.sum()

    @property
    def g(self) -> int:
        return len(self.classes)

    def with_priors(self, priors) -> "DiscriminantModel":
        return dataclasses.replace(self, priors=np.asarray(priors, dtype=float))

    def classify(self, X) -> np.ndarray:
        from robricks.discriminant.rules import classify

        return classify(self, X)

    def predict_labels(self, X) -> list:
        return [self.classes[j] for j in self.classify(X)]

    def summary(self) -> str:
        return f"kind={self.kind} g={self.g} priors={np.round(self.priors, 4).tolist()}"


def check_priors(priors, sizes) -> np.ndarray:
    if priors is None:
        return sizes / sizes.sum()
    priors = np.asarray(priors, dtype=float).ravel()
    if priors.size != sizes.size:
        raise InputError("one prior per group is required", g=sizes.size, priors=priors.size)
    if np.any(priors <= 0) or not np.all(np.isfinite(priors)):
        raise InputError("priors must be positive", priors=priors.tolist())
    return priors / priors.sum()


from robricks.discriminant.groups import estimate_groups, weighted_lda  # noqa E402
from robricks.discriminant.rules import (  # noqa E402
    classify,
    classify_fisher,
    confusion_matrix,
    decision_grid,
    fisher_fit,
    fisher_scores,
    lda_scores,
    qda_scores,
)
from robricks.discriminant.reduce import Pipeline, pipeline_fit, svd_preprocess  # noqa E402
from robricks.discriminant.dpls import dpls_classify, dpls_fit, sprm_da_fit  # noqa E402
