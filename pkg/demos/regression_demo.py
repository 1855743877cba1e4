# -*- coding: utf-8 -*-
# @Time    : 2026-10-23 09:05
# @Author  : robricks
# @Desc    : least squares against LTS and MM on a line with a far cloud
import numpy as np
from loguru import logger

from robricks.regression import RegressionProblem, lts_fit, mm_fit, ols_fit, regression_diagnostics
from robricks.validate import simulate_scenario

"""

一条直线加上 20% 的离群点云:

1. 最小二乘被拉偏
2. LTS / MM 基本不受影响
3. 诊断图把离群点分成竖直离群点和坏杠杆点

"""
if __name__ == "__main__":
    scenario = simulate_scenario("fig5", seed=5)
    problem = RegressionProblem(scenario.X, scenario.y, intercept=True)

    for fit in (ols_fit(problem), lts_fit(problem, seed=1), mm_fit(problem, seed=1)):
        logger.info(f"{fit.method:>6}: beta={np.round(fit.beta, 3)} truth={scenario.truth['beta']}")

    diagnostics = regression_diagnostics(mm_fit(problem, seed=1), scenario.X, seed=1)
    kinds = [row["kind"] for row in diagnostics.rows()]
    logger.info({kind: kinds.count(kind) for kind in set(kinds)})
