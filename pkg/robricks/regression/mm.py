# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 12:40
# @Author  : robricks
# @Desc    : MM regression
from typing import Optional

from robricks.core import events
from robricks.lib.rho import RhoFamily, tuning_for_efficiency
from robricks.lib.scales import ScaleEstimate, consistency_constant, m_scale
from robricks.regression import RegressionFit, RegressionProblem
from robricks.regression.m import m_fit
from robricks.regression.subsampling import s_fit
from robricks.state import const


@events.fitting("mm")
def mm_fit(
    problem: RegressionProblem,
    efficiency: float = const.MM_EFFICIENCY,
    seed: Optional[int] = None,
    c0: Optional[float] = None,
    **kwargs,
) -> RegressionFit:
    """
    S start, then a bisquare M-step with the scale held fixed

    1. S-estimate with bisquare(1), delta = 0.5
    2. sigma = M-scale of its residuals / c0
    3. IRWLS with bisquare(k), k chosen for ``efficiency`` (0.85 -> 3.44)

    :param problem: regression problem, n > p
    :param efficiency: normal-model efficiency of the final M-step
    :param seed: subsampling seed of the S start
    :param c0: consistency constant of the bisquare(1) M-scale, integrated at the normal model when omitted
    :param kwargs: passed to the S start (N, threads ...)
    """
    start = s_fit(problem, family=RhoFamily.bisquare(1.0), delta=0.5, seed=seed, **kwargs)
    c0 = consistency_constant(RhoFamily.bisquare(1.0), 0.5) if c0 is None else float(c0)
    raw = m_scale(start.residuals, RhoFamily.bisquare(1.0), 0.5)
    sigma = ScaleEstimate(
        raw.value / c0, c0, "mm-scale", delta=0.5, degenerate=raw.degenerate
    )
    k = tuning_for_efficiency(efficiency)
    fit = m_fit(problem, RhoFamily.bisquare(k), sigma=sigma, beta0=start.beta)
    fit.method = "mm"
    fit.meta.update(
        k=k,
        efficiency=efficiency,
        c0=c0,
        s_beta=start.beta.tolist(),
        s_subset=start.meta["subset"],
        seed=start.meta["seed"],
        N=start.meta["N"],
    )
    return fit
