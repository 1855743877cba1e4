# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 15:34
# @Author  : robricks
# @Desc    : outlier map of a regression fit
import dataclasses
from typing import Optional

import numpy as np

from robricks.lib import linalg
from robricks.lib.scales import mad
from robricks.regression import RegressionFit


@dataclasses.dataclass
class RegressionDiagnostics:
    standardized: np.ndarray
    leverage: np.ndarray
    residual_cutoff: float
    leverage_cutoff: float
    kind: np.ndarray  # regular / vertical / good-leverage / bad-leverage

    def rows(self) -> list:
        return [
            {"case": i, "standardized": s, "leverage": d, "kind": k}
            for i, (s, d, k) in enumerate(zip(self.standardized, self.leverage, self.kind))
        ]


def regression_diagnostics(
    fit: RegressionFit,
    X,
    quantile: float = 0.975,
    residual_cutoff: float = 2.5,
    seed: Optional[int] = None,
) -> RegressionDiagnostics:
    """
    standardized residuals against robust distances of the predictors

    residuals are divided by the fit's scale (consistent MAD of the residuals
    when the fit carries none) and flagged beyond +-residual_cutoff; leverage
    is the square root of the reweighted MCD distance of each row of X,
    flagged beyond sqrt(chi2_p(quantile))
    """
    from robricks.multivariate.mcd import reweighted_mcd

    X = linalg.as_matrix(X)
    sigma = fit.sigma.value
    if sigma <= 0:
        sigma = mad(fit.residuals, consistent=True).value or 1.0
    standardized = fit.residuals / sigma

    n, p = X.shape
    if n > p + 1:
        leverage = np.sqrt(reweighted_mcd(X, quantile, seed=seed).distances)
    else:
        leverage = np.zeros(n)

    rc = float(residual_cutoff)
    lc = float(np.sqrt(linalg.chi2_quantile(quantile, p)))
    vertical = np.abs(standardized) > rc
    lever = leverage > lc
    kind = np.where(
        lever,
        np.where(vertical, "bad-leverage", "good-leverage"),
        np.where(vertical, "vertical", "regular"),
    )
    return RegressionDiagnostics(standardized, leverage, rc, lc, kind)
