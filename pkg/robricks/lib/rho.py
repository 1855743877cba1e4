# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 10:05
# @Author  : robricks
# @Desc    : rho / psi / weight families
import dataclasses
import math
from typing import Optional, Tuple, Union

import numpy as np
from scipy import integrate, optimize, stats

from robricks.core.errors import InputError
from robricks.state import const

__all__ = (
    "RhoFamily",
    "rho_eval",
    "bisquare_efficiency",
    "tuning_for_efficiency",
)

KINDS = ("quadratic", "absolute", "huber", "bisquare", "indicator")
DEFAULT_K = {"huber": 1.345, "bisquare": 1.0}

ArrayLike = Union[float, np.ndarray]


@dataclasses.dataclass(frozen=True)
class RhoFamily:
    """
    one member of a rho-function family, evaluated elementwise

    - quadratic: rho = r**2, psi = 2r, W = 2
    - absolute: rho = |r|, W floored at ``const.L1_FLOOR``
    - huber(k): rho = r**2/2 inside [-k, k], linear outside, psi clipped at k
    - bisquare(k): rho = 1 - (1 - (r/k)**2)**3 inside, 1 outside
    - indicator: rho = 1{|r| > 1}, its M-scale is a quantile of |r|

    huber carries half the quadratic normalisation, so huber(k -> inf)
    returns exactly half of every quadratic output. Estimating equations
    are unaffected by the factor.
    """

    kind: str
    k: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown rho family: {self.kind}", kind=self.kind)

        if self.kind in DEFAULT_K:
            k = DEFAULT_K[self.kind] if self.k is None else float(self.k)
            if not k > 0 or not math.isfinite(k):
                raise InputError("tuning constant must be positive", k=k)
            object.__setattr__(self, "k", k)
        else:
            object.__setattr__(self, "k", None)

    @classmethod
    def from_spec(cls, spec: Union[str, "RhoFamily"]) -> "RhoFamily":
        """
        parse ``"bisquare:3.44"`` / ``"huber"`` / ``"quadratic"``

        :param spec: family name, optionally followed by ``:k``
        :return:
        """
        if isinstance(spec, cls):
            return spec
        kind, _, k = str(spec).strip().lower().partition(":")
        try:
            return cls(kind, float(k) if k else None)
        except ValueError as e:
            if isinstance(e, InputError):
                raise
            raise InputError(f"bad tuning constant in {spec!r}") from e

    @classmethod
    def quadratic(cls):
        return cls("quadratic")

    @classmethod
    def absolute(cls):
        return cls("absolute")

    @classmethod
    def huber(cls, k: float = 1.345):
        return cls("huber", k)

    @classmethod
    def bisquare(cls, k: float = 1.0):
        return cls("bisquare", k)

    @classmethod
    def indicator(cls):
        return cls("indicator")

    @property
    def bounded(self) -> bool:
        return self.kind in ("bisquare", "indicator")

    @property
    def monotone(self) -> bool:
        return self.kind in ("quadratic", "absolute", "huber")

    @property
    def rho_max(self) -> float:
        return 1.0 if self.bounded else math.inf

    @property
    def spec(self) -> str:
        return self.kind if self.k is None else f"{self.kind}:{self.k!r}"

    def rho(self, r: ArrayLike) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        a = np.abs(r)
        if self.kind == "quadratic":
            return r**2
        if self.kind == "absolute":
            return a
        if self.kind == "huber":
            k = self.k
            return np.where(a <= k, 0.5 * r**2, k * a - 0.5 * k**2)
        if self.kind == "bisquare":
            u = np.minimum((r / self.k) ** 2, 1.0)
            return 1.0 - (1.0 - u) ** 3
        return (a > 1.0).astype(float)

    def psi(self, r: ArrayLike) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self.kind == "quadratic":
            return 2.0 * r
        if self.kind == "absolute":
            return np.sign(r)
        if self.kind == "huber":
            return np.clip(r, -self.k, self.k)
        if self.kind == "bisquare":
            k = self.k
            u = (r / k) ** 2
            return np.where(u <= 1.0, 6.0 * r / k**2 * (1.0 - u) ** 2, 0.0)
        return np.zeros_like(r)

    def weight(self, r: ArrayLike) -> np.ndarray:
        """W(r) = psi(r) / r with the limit at zero"""
        r = np.asarray(r, dtype=float)
        a = np.abs(r)
        if self.kind == "quadratic":
            return np.full_like(r, 2.0)
        if self.kind == "absolute":
            return 1.0 / np.maximum(a, const.L1_FLOOR)
        if self.kind == "huber":
            return np.where(a <= self.k, 1.0, self.k / np.maximum(a, self.k))
        if self.kind == "bisquare":
            k = self.k
            u = (r / k) ** 2
            return np.where(u <= 1.0, 6.0 / k**2 * (1.0 - u) ** 2, 0.0)
        return np.zeros_like(r)

    def scale_weight(self, r: ArrayLike) -> np.ndarray:
        """W_sigma(r) = rho(r) / r**2, drives the M-scale fixed point"""
        r = np.asarray(r, dtype=float)
        a = np.abs(r)
        safe = np.where(a > 0, a, 1.0)
        if self.kind == "quadratic":
            return np.ones_like(r)
        if self.kind == "absolute":
            return 1.0 / np.maximum(a, const.L1_FLOOR)
        if self.kind == "huber":
            k = self.k
            return np.where(a <= k, 0.5, (k * safe - 0.5 * k**2) / safe**2)
        if self.kind == "bisquare":
            k = self.k
            u = (r / k) ** 2
            inside = (3.0 - 3.0 * u + u**2) / k**2
            return np.where(u <= 1.0, inside, 1.0 / safe**2)
        return np.where(a > 1.0, 1.0 / safe**2, 0.0)

    def __call__(self, r: ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.rho(r), self.psi(r), self.weight(r)


def rho_eval(family: RhoFamily, r: float) -> Tuple[float, float, float]:
    """
    rho, psi and weight of one standardized residual

    huber is normalised so that psi = clip(r, -k, k): in the limit k -> inf it
    returns half of each quadratic output (rho = r**2/2, psi = r, W = 1 against
    r**2, 2r, 2). The factor is constant, so m_fit with huber(k -> inf) still
    equals least squares.

    :param family: rho family
    :param r: residual, must be finite
    :return: (rho, psi, weight)
    """
    family = RhoFamily.from_spec(family)
    r = float(r)
    if not math.isfinite(r):
        raise InputError("residual must be finite", r=r)
    rho, psi, weight = family(r)
    return float(rho), float(psi), float(weight)


def bisquare_efficiency(k: float) -> float:
    """
    asymptotic efficiency of the bisquare M-estimator at the normal model

        (E psi')**2 / E psi**2
    """
    if not k > 0:
        raise InputError("tuning constant must be positive", k=k)

    def psi(z):
        return z * (1 - (z / k) ** 2) ** 2

    def dpsi(z):
        u = (z / k) ** 2
        return (1 - u) * (1 - 5 * u)

    pdf = stats.norm.pdf
    e_dpsi = integrate.quad(lambda z: dpsi(z) * pdf(z), -k, k)[0]
    e_psi2 = integrate.quad(lambda z: psi(z) ** 2 * pdf(z), -k, k)[0]
    return e_dpsi**2 / e_psi2


def tuning_for_efficiency(efficiency: float) -> float:
    """
    bisquare k reaching ``efficiency`` at the normal model

    0.85 maps to the tabulated 3.44, other values are solved by root finding
    """
    if not 0 < efficiency < 1:
        raise InputError("efficiency must lie in (0, 1)", efficiency=efficiency)
    if math.isclose(efficiency, const.MM_EFFICIENCY):
        return const.MM_K
    return optimize.brentq(lambda k: bisquare_efficiency(k) - efficiency, 0.2, 50.0, xtol=1e-10)
