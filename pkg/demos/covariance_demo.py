# -*- coding: utf-8 -*-
# @Time    : 2026-10-23 09:20
# @Author  : robricks
# @Desc    : robust correlation and tolerance ellipses
import numpy as np
from loguru import logger

from robricks.multivariate import (
    classical_estimate,
    correlation,
    ellipse_polyline,
    reweighted_mcd,
    sign_covariance,
    stahel_donoho_fit,
    tolerance_ellipse,
)
from robricks.utils.csv_ import save_rows
from robricks.validate import simulate_scenario

if __name__ == "__main__":
    scenario = simulate_scenario("fig9", {"n": 200}, seed=9)
    X = scenario.X
    clean = np.corrcoef(X[~scenario.contaminated], rowvar=False)[0, 1]
    logger.info(f"clean correlation {clean:.3f}")

    estimates = {
        "classical": classical_estimate(X),
        "mcd": reweighted_mcd(X, seed=1),
        "stahel-donoho": stahel_donoho_fit(X, seed=1),
        "sign": sign_covariance(X),
    }
    rows = []
    for name, est in estimates.items():
        logger.info(f"{name:>14}: correlation {correlation(est)[0, 1]:.3f}")
        for x, y in ellipse_polyline(tolerance_ellipse(est, 0.975), 100):
            rows.append({"estimator": name, "x": x, "y": y})

    # 画图数据, 交给任意绘图工具
    save_rows(rows, "ellipses.csv")
