# -*- coding: utf-8 -*-
# @Time    : 2026-10-23 09:40
# @Author  : robricks
# @Desc    : PLS against partial robust M on a calibration set with bad leverage rows
from loguru import logger

from robricks.core import events
from robricks.pls import PRMConfig, pls_fit, prm_fit, sprm_fit
from robricks.state import const
from robricks.validate import monte_carlo_cv, simulate_scenario, trimmed_rmsep


@events.on(const.ON_ITERATION, target="prm")
def watch(context):
    logger.debug(f"[prm] iteration {context.iteration} change {context.change:.2e}")


if __name__ == "__main__":
    scenario = simulate_scenario("glass-analogue", seed=6)
    X, y = scenario.X, scenario.y
    X_test, y_test = scenario.extra["X_test"], scenario.extra["y_test"]

    report = monte_carlo_cv(
        X, y, lambda k, Xt, yt: prm_fit(Xt, yt, k, PRMConfig(seed=1)), range(1, 6), n_splits=20, trim=0.15, seed=1
    )
    logger.info(report.summary())
    k = report.chosen

    for name, model in [
        ("pls", pls_fit(X, y, k)),
        ("prm", prm_fit(X, y, k, PRMConfig(seed=1))),
        ("sprm", sprm_fit(X, y, k, eta=0.5, cfg=PRMConfig(seed=1))),
    ]:
        error = trimmed_rmsep(y_test - model.predict(X_test), 0.1)
        logger.info(f"{name:>5}: k={k} trimmed RMSEP {error:.3f}")

    weights = prm_fit(X, y, k, PRMConfig(seed=1)).case_weights
    logger.info(f"bad rows weights: {weights[scenario.contaminated].round(3)}")
