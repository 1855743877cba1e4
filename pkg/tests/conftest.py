# -*- coding: utf-8 -*-
# @Time    : 2026-10-22 09:00
# @Author  : robricks
# @Desc    : shared fixtures
import os

import hypothesis
import numpy as np
import pytest

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fast"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: Monte-Carlo checks that take minutes")


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture
def line_data(rng):
    """y = 1 + 2 x1 - x2 with small noise, 60 rows"""
    X = rng.normal(size=(60, 2))
    y = 1.0 + 2.0 * X[:, 0] - X[:, 1] + 0.1 * rng.normal(size=60)
    return X, y
