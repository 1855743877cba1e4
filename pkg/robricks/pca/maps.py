# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 17:40
# @Author  : robricks
# @Desc    : score / orthogonal distance outlier map
import dataclasses

import numpy as np
from scipy import stats

from robricks.lib import linalg
from robricks.lib.scales import mad
from robricks.pca import PCAModel, reconstruct


def score_distances(model: PCAModel, X) -> np.ndarray:
    """sqrt(sum_j t_ij**2 / lambda_j)"""
    T = model.scores(X)
    lam = np.where(model.eigenvalues > 0, model.eigenvalues, np.inf)
    return np.sqrt((T**2 / lam).sum(axis=1))


@dataclasses.dataclass
class OutlierMap:
    score_distance: np.ndarray
    orthogonal_distance: np.ndarray
    sd_cutoff: float
    od_cutoff: float

    @property
    def flags(self) -> np.ndarray:
        return (self.score_distance > self.sd_cutoff) | (self.orthogonal_distance > self.od_cutoff)

    def rows(self) -> list:
        return [
            {"case": i, "score_distance": s, "orthogonal_distance": o, "flag": int(f)}
            for i, (s, o, f) in enumerate(
                zip(self.score_distance, self.orthogonal_distance, self.flags)
            )
        ]


def outlier_map(model: PCAModel, X, quantile: float = 0.975) -> OutlierMap:
    """
    score distance cut-off sqrt(chi2_quantile(q)); orthogonal distance
    cut-off from a normal fit to OD**(2/3) with median and consistent MAD
    """
    X = linalg.as_matrix(X)
    sd = score_distances(model, X)
    _, od = reconstruct(model, X)
    od = np.atleast_1d(od)
    z = od ** (2 / 3)
    od_cut = float(
        (np.median(z) + mad(z, consistent=True).value * stats.norm.ppf(quantile)) ** 1.5
    )
    sd_cut = float(np.sqrt(linalg.chi2_quantile(quantile, model.q)))
    return OutlierMap(sd, od, sd_cut, od_cut)
