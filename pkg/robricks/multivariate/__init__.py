# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 13:45
# @Author  : robricks
# @Desc    : multivariate location and scatter
import dataclasses
from typing import Optional

import numpy as np

from robricks.core.errors import InputError
from robricks.lib import linalg


@dataclasses.dataclass
class CovarianceEstimate:
    """
    location t, scatter C and squared distances (x_i - t)' C^-1 (x_i - t)
    """

    location: np.ndarray
    scatter: np.ndarray
    distances: np.ndarray
    case_weights: np.ndarray
    method: str
    meta: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        self.location = np.asarray(self.location, dtype=float)
        self.scatter = linalg.symmetrize(np.asarray(self.scatter, dtype=float))

    @property
    def p(self) -> int:
        return self.location.size

    def summary(self) -> str:
        return f"method={self.method} p={self.p} h={self.meta.get('h')}"


@dataclasses.dataclass
class DirectionSet:
    vectors: np.ndarray
    seed: Optional[int] = None
    scheme: str = ""

    def __post_init__(self):
        self.vectors = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        norms = np.linalg.norm(self.vectors, axis=1)
        if np.any(norms == 0):
            raise InputError("directions must be nonzero")
        self.vectors = self.vectors / norms[:, None]

    def __len__(self):
        return self.vectors.shape[0]

    def __iter__(self):
        return iter(self.vectors)


from robricks.multivariate.location import (  # noqa E402
    classical_estimate,
    coordinatewise_median,
    correlation,
    mahalanobis,
    spatial_median,
)
from robricks.multivariate.mcd import mcd_fit, reweighted_mcd  # noqa E402
from robricks.multivariate.stahel import (  # noqa E402
    make_directions,
    outlyingness,
    stahel_donoho_fit,
)
from robricks.multivariate.signcov import sign_covariance, spatial_signs  # noqa E402
from robricks.multivariate.ellipse import (  # noqa E402
    Ellipse,
    ellipse_polyline,
    tolerance_ellipse,
)
