# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 15:20
# @Author  : robricks
# @Desc    : tolerance ellipses as plot data
import dataclasses
import math

import numpy as np

from robricks.core.errors import InputError, SingularityError, UnsupportedError
from robricks.lib import linalg
from robricks.multivariate import CovarianceEstimate


@dataclasses.dataclass(frozen=True)
class Ellipse:
    center: tuple
    axes: tuple  # (major, minor) semi-axes
    angle: float  # radians, major axis against the first coordinate, in (-pi/2, pi/2]
    level: float


def tolerance_ellipse(est: CovarianceEstimate, level: float = 0.975) -> Ellipse:
    """ellipse {x : d(x, t, C) = chi2_level(2)}"""
    if est.p != 2:
        raise UnsupportedError("tolerance ellipses need p = 2", p=est.p)
    if not 0 < level < 1:
        raise InputError("level must lie in (0, 1)", level=level)
    values, vectors = linalg.eigh_desc(est.scatter)
    if values[-1] <= 0:
        raise SingularityError("scatter is not positive definite")
    r2 = linalg.chi2_quantile(level, 2)
    major = vectors[:, 0]
    angle = math.atan2(major[1], major[0])
    if angle <= -math.pi / 2:
        angle += math.pi
    elif angle > math.pi / 2:
        angle -= math.pi
    return Ellipse(
        center=tuple(float(v) for v in est.location),
        axes=(math.sqrt(values[0] * r2), math.sqrt(values[1] * r2)),
        angle=angle,
        level=level,
    )


def ellipse_polyline(ellipse: Ellipse, n: int = 100) -> np.ndarray:
    """n points on the ellipse, closed (first row repeated at the end)"""
    theta = np.linspace(0, 2 * np.pi, n)
    a, b = ellipse.axes
    c, s = math.cos(ellipse.angle), math.sin(ellipse.angle)
    R = np.array([[c, -s], [s, c]])
    pts = np.column_stack([a * np.cos(theta), b * np.sin(theta)]) @ R.T
    return pts + np.asarray(ellipse.center)
