# -*- coding: utf-8 -*-
# @Time    : 2026-10-22 09:20
# @Author  : robricks
# @Desc    : rho families and univariate scales
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import optimize

from robricks.core.errors import InputError
from robricks.lib.rho import RhoFamily, bisquare_efficiency, rho_eval, tuning_for_efficiency
from robricks.lib.scales import (
    consistency_constant,
    mad,
    m_scale,
    monte_carlo_constant,
    quantile_scale,
    trimmed_squares_scale,
)

FAMILIES = [
    RhoFamily.quadratic(),
    RhoFamily.absolute(),
    RhoFamily.huber(1.345),
    RhoFamily.bisquare(1.0),
    RhoFamily.bisquare(3.44),
]

residuals = st.lists(
    st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False), min_size=3, max_size=30
)
magnitudes = st.lists(
    st.tuples(st.floats(min_value=0.1, max_value=100), st.booleans()).map(lambda v: v[0] if v[1] else -v[0]),
    min_size=3,
    max_size=30,
)
# powers of two keep the products exact
factors = st.sampled_from([-8.0, -2.0, -0.5, 0.25, 1.0, 4.0])


def test_rho_eval_examples():
    assert rho_eval(RhoFamily.bisquare(2.0), 2.0)[0] == pytest.approx(1.0)
    assert rho_eval(RhoFamily.huber(1.345), 3.0)[1] == pytest.approx(1.345)
    assert rho_eval("quadratic", 2.0) == pytest.approx((4.0, 4.0, 2.0))
    with pytest.raises(InputError):
        rho_eval("huber", float("nan"))


def test_from_spec():
    f = RhoFamily.from_spec("bisquare:3.44")
    assert f.kind == "bisquare" and f.k == 3.44
    assert RhoFamily.from_spec("huber").k == 1.345
    with pytest.raises(InputError):
        RhoFamily.from_spec("cauchy")
    with pytest.raises(InputError):
        RhoFamily.from_spec("huber:-1")


@pytest.mark.parametrize("family", FAMILIES[2:], ids=lambda f: f.spec)
def test_psi_matches_finite_differences(family):
    grid = np.linspace(-3 * family.k, 3 * family.k, 100)
    h = 1e-6
    numeric = (family.rho(grid + h) - family.rho(grid - h)) / (2 * h)
    assert np.allclose(family.psi(grid), numeric, atol=1e-4)


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.spec)
def test_rho_shape(family):
    r = np.linspace(0, 20, 200)
    rho = family.rho(r)
    assert rho[0] == 0
    assert np.all(np.diff(rho) >= -1e-15)
    family.bounded and np.testing.assert_allclose(family.rho(1e6), 1.0)
    assert np.all(np.isfinite(family.weight(np.array([0.0, 1e-12]))))


def test_huber_limit_is_half_quadratic():
    r = np.linspace(-100, 100, 101)
    big = RhoFamily.huber(1e6)
    np.testing.assert_allclose(big.rho(r), 0.5 * RhoFamily.quadratic().rho(r), atol=1e-6)
    np.testing.assert_allclose(big.psi(r), 0.5 * RhoFamily.quadratic().psi(r), atol=1e-6)
    np.testing.assert_allclose(big.weight(r), 0.5 * RhoFamily.quadratic().weight(r), atol=1e-6)
    assert rho_eval(big, 4.0) == pytest.approx(tuple(0.5 * v for v in rho_eval("quadratic", 4.0)))


def test_mad():
    assert mad([1, 2, 3, 4, 5]).value == 1
    assert mad([1, 2, 3, 4, 5], consistent=True).value == pytest.approx(1 / 0.675)
    assert mad([4, 4, 4]).value == 0
    with pytest.raises(InputError):
        mad([])


def test_quantile_and_trimmed_scales():
    assert quantile_scale([-3, 1, 2], 2).value == 2
    assert quantile_scale([-3, 1, 2], 3).value == 3
    assert quantile_scale([5, 5, 5], 1).value == 5
    assert trimmed_squares_scale([3, 4], 2).value == pytest.approx(math.sqrt(25 / 2))
    assert trimmed_squares_scale([1, 1, 1, 100], 3).value == pytest.approx(math.sqrt(3 / 4))
    assert trimmed_squares_scale([0, 0], 1).value == 0
    with pytest.raises(InputError):
        quantile_scale([1, 2], 3)


def test_m_scale_examples():
    assert m_scale([1, 2, 3], RhoFamily.indicator(), 0.5).value == pytest.approx(2)
    assert m_scale([3, 4], RhoFamily.quadratic(), 1.0).value == pytest.approx(5 / math.sqrt(2))

    c = 2.5
    family = RhoFamily.bisquare(1.0)
    oracle = optimize.brentq(lambda s: float(family.rho(c / s)) - 0.5, 1e-3, 1e3, xtol=1e-14)
    assert m_scale([c] * 6, family, 0.5).value == pytest.approx(oracle, rel=1e-8)


def test_m_scale_degenerate():
    est = m_scale([0.0, 0.0, 0.0])
    assert est.value == 0 and est.degenerate
    with pytest.raises(InputError):
        m_scale([1.0, 2.0], RhoFamily.bisquare(1.0), 1.5)


@given(residuals, factors)
def test_scale_equivariance(r, t):
    r = np.asarray(r)
    scaled = t * r
    assert mad(scaled).value == pytest.approx(abs(t) * mad(r).value, rel=1e-10, abs=1e-12)
    h = (len(r) + 1) // 2
    assert quantile_scale(scaled, h).value == pytest.approx(abs(t) * quantile_scale(r, h).value, rel=1e-10, abs=1e-12)
    assert trimmed_squares_scale(scaled, h).value == pytest.approx(
        abs(t) * trimmed_squares_scale(r, h).value, rel=1e-10, abs=1e-12
    )


@given(magnitudes)
def test_m_scale_fixed_point(r):
    r = np.asarray(r)
    family = RhoFamily.bisquare(1.0)
    est = m_scale(r, family, 0.5)
    if est.degenerate:
        return
    assert float(np.mean(family.rho(r / est.value))) == pytest.approx(0.5, abs=1e-6)


def test_consistency_constants():
    assert consistency_constant(RhoFamily.indicator(), 0.5) == 0.675
    assert consistency_constant(RhoFamily.bisquare(1.0), 0.5) == pytest.approx(1.5476, abs=1e-3)
    assert consistency_constant(RhoFamily.quadratic(), 1.0) == 1.0
    assert consistency_constant(RhoFamily.bisquare(1.0), 0.5, method="integrate") == consistency_constant(
        RhoFamily.bisquare(1.0), 0.5
    )
    assert consistency_constant(RhoFamily.indicator(), 0.5, method="integrate") == pytest.approx(0.6745, abs=1e-4)


def test_monte_carlo_constants():
    value, se = monte_carlo_constant(RhoFamily.indicator(), 0.5, draws=200_000)
    assert value == pytest.approx(0.675, rel=0.01)
    assert se > 0
    integrated = consistency_constant(RhoFamily.bisquare(1.0), 0.5, method="integrate")
    value, _ = monte_carlo_constant(RhoFamily.bisquare(1.0), 0.5, draws=200_000)
    assert value == pytest.approx(integrated, rel=0.01)


def test_efficiency_map():
    assert tuning_for_efficiency(0.85) == 3.44
    assert bisquare_efficiency(3.44) == pytest.approx(0.85, abs=0.01)
    assert bisquare_efficiency(4.685) == pytest.approx(0.95, abs=0.005)
    k = tuning_for_efficiency(0.9)
    assert bisquare_efficiency(k) == pytest.approx(0.9, abs=1e-8)
    with pytest.raises(InputError):
        tuning_for_efficiency(1.2)
