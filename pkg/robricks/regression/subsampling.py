# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 12:04
# @Author  : robricks
# @Desc    : LMS / LTS / S regression by elemental subsampling
import dataclasses
import itertools
import math
from typing import Literal, Optional, Union

import numpy as np
from loguru import logger

from robricks.core import events
from robricks.core.dispatch import Dispatcher
from robricks.core.errors import DimensionalityError, InputError, SingularityError
from robricks.lib import linalg, streams
from robricks.lib.rho import RhoFamily
from robricks.lib.scales import (
    ScaleEstimate,
    m_scale,
    quantile_scale,
    trimmed_squares_scale,
)
from robricks.regression import RegressionFit, RegressionProblem, make_fit
from robricks.state import const

ALIASES = {"lms": "quantile", "lts": "trimmed", "s": "m"}
# 超过这个数量就不再穷举
MAX_EXHAUSTIVE = 200_000


def default_h(n: int, p: int) -> int:
    return (n + p + 1) // 2


def required_subsamples(
    p: int,
    eps: float = const.SUBSAMPLE_EPS,
    gamma: float = const.SUBSAMPLE_GAMMA,
    exact: bool = True,
) -> int:
    """
    number of elemental subsets so that at least one is outlier free with
    probability 1 - gamma when a fraction eps is contaminated

        exact:  N >= |ln gamma| / |ln(1 - (1 - eps)**p)|
        approx: N >= |ln gamma| / (1 - eps)**p

    :param p: subset size
    :param eps: contamination fraction in [0, 1)
    :param gamma: failure probability in (0, 1)
    :param exact: use the exact form, otherwise the first-order approximation
    """
    if p < 1 or not 0 <= eps < 1 or not 0 < gamma < 1:
        raise InputError("need p >= 1, 0 <= eps < 1, 0 < gamma < 1", p=p, eps=eps, gamma=gamma)
    clean = (1 - eps) ** p
    if clean >= 1:
        return 1
    bound = abs(math.log(gamma)) / (abs(math.log1p(-clean)) if exact else clean)
    return max(1, math.ceil(bound - 1e-12))


@dataclasses.dataclass(frozen=True)
class ScaleSpec:
    """
    residual scale minimised over candidate fits

    - quantile: h-th smallest |r| (LMS)
    - trimmed: trimmed squares scale (LTS)
    - m: M-scale with ``family`` and ``delta`` (S)
    """

    kind: Literal["quantile", "trimmed", "m"] = "trimmed"
    h: Optional[int] = None
    family: Union[RhoFamily, str] = "bisquare:1.0"
    delta: float = 0.5

    def __post_init__(self):
        kind = ALIASES.get(self.kind, self.kind)
        if kind not in ("quantile", "trimmed", "m"):
            raise InputError(f"unknown scale: {self.kind}", kind=self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "family", RhoFamily.from_spec(self.family))

    @classmethod
    def parse(cls, spec: Union[str, "ScaleSpec"], **kwargs) -> "ScaleSpec":
        return spec if isinstance(spec, cls) else cls(spec, **kwargs)

    @property
    def method(self) -> str:
        return {"quantile": "lms", "trimmed": "lts", "m": "s"}[self.kind]

    def evaluate(self, r: np.ndarray, h: int) -> ScaleEstimate:
        if self.kind == "quantile":
            return quantile_scale(r, h)
        if self.kind == "trimmed":
            return trimmed_squares_scale(r, h)
        return m_scale(r, self.family, self.delta)


def _smallest(r: np.ndarray, h: int) -> np.ndarray:
    return np.sort(np.argsort(r**2, kind="stable")[:h])


def concentrate(Z, y, beta, h, max_steps=const.MAX_CSTEPS):
    """
    concentration steps: refit on the h smallest squared residuals until the
    h-subset repeats; the trimmed objective never increases

    :return: (beta, h-subset, steps)
    """
    H = _smallest(y - Z @ beta, h)
    steps = 0
    for steps in range(1, max_steps + 1):
        try:
            updated = linalg.lstsq(Z[H], y[H])
        except SingularityError:
            break
        beta = updated
        H_new = _smallest(y - Z @ beta, h)
        if np.array_equal(H_new, H):
            break
        H = H_new
    return beta, H, steps


def _draw(rng: np.random.Generator, Z, y, attempts: int):
    n, p = Z.shape
    skipped = 0
    for _ in range(attempts):
        subset = np.sort(rng.choice(n, size=p, replace=False))
        try:
            return subset, linalg.solve_exact(Z[subset], y[subset]), skipped
        except SingularityError:
            skipped += 1
    return None, None, skipped


def _s_refine(Z, y, beta, spec: ScaleSpec, tol=const.IRWLS_TOL, max_iter=const.IRWLS_MAX_ITER):
    # IRWLS on the M-equations, sigma re-solved each round
    family = spec.family
    best = (m_scale(y - Z @ beta, family, spec.delta).value, beta)
    iteration = 0
    for iteration in range(1, max_iter + 1):
        r = y - Z @ beta
        sigma = m_scale(r, family, spec.delta)
        if sigma.degenerate:
            break
        try:
            updated = linalg.lstsq(Z, y, weights=family.weight(r / sigma.value))
        except SingularityError:
            break
        step = float(np.linalg.norm(updated - beta))
        beta = updated
        value = m_scale(y - Z @ beta, family, spec.delta).value
        value < best[0] and (best := (value, beta))
        if step <= tol * (float(np.linalg.norm(beta)) + tol):
            break
    return best[1], iteration


@events.fitting("scale-min")
def scale_min_fit(
    problem: RegressionProblem,
    scale: Union[str, ScaleSpec] = "lts",
    N: Union[int, str] = "auto",
    seed: Optional[int] = None,
    h: Optional[int] = None,
    max_csteps: int = const.MAX_CSTEPS,
    threads: Optional[int] = None,
) -> RegressionFit:
    """
    minimise a robust residual scale over elemental-subset fits

    every candidate solves an exact p x p system; LTS candidates are then
    concentrated and the S winner is refined by IRWLS. Ties go to the
    lexicographically smallest subset. ``N="all"``, or any N reaching
    C(n, p), enumerates every subset instead of sampling.

    :param problem: regression problem, n > p
    :param scale: ``lms`` / ``lts`` / ``s`` or a ScaleSpec
    :param N: number of random subsets, ``auto`` uses eps=0.5, gamma=0.01
    :param seed: candidate i draws from stream (seed, i)
    :param h: coverage for LMS / LTS, default floor((n + p + 1) / 2)
    :param max_csteps: concentration step cap per candidate
    :param threads: worker threads, results do not depend on it
    """
    spec = ScaleSpec.parse(scale)
    Z, y = problem.design, problem.y
    n, p = Z.shape
    if n <= p:
        raise DimensionalityError("subsampling needs n > p", n=n, p=p)
    h = h or spec.h or default_h(n, p)
    if not p <= h <= n:
        raise InputError(f"h must lie in [{p}, {n}]", h=h)
    seed = streams.resolve_seed(seed)

    total = math.comb(n, p)
    if N == "auto":
        N = required_subsamples(p)
    exhaustive = N == "all" or (int(N) >= total and total <= MAX_EXHAUSTIVE)
    if exhaustive:
        items = [np.array(c) for c in itertools.combinations(range(n), p)]
    else:
        items = list(range(int(N)))

    def evaluate(item):
        if exhaustive:
            subset, skipped = item, 0
            try:
                beta = linalg.solve_exact(Z[subset], y[subset])
            except SingularityError:
                return None, 1
        else:
            subset, beta, skipped = _draw(streams.stream(seed, item), Z, y, attempts=50)
            if subset is None:
                return None, skipped

        steps = 0
        if spec.kind == "trimmed":
            beta, _, steps = concentrate(Z, y, beta, h, max_csteps)
        objective = spec.evaluate(y - Z @ beta, h).value
        return (objective, tuple(int(i) for i in subset), beta, steps), skipped

    results = Dispatcher(threads).map(evaluate, items)
    skipped = sum(s for _, s in results)
    candidates = [c for c, _ in results if c is not None]
    if not candidates:
        raise SingularityError("every elemental subset is singular", skipped=skipped)
    skipped and logger.warning(f"[{spec.method}] skipped {skipped} singular subsets")

    objective, subset, beta, _ = min(candidates, key=lambda c: (c[0], c[1]))
    iterations = 0
    if spec.kind == "m":
        beta, iterations = _s_refine(Z, y, beta, spec)

    r = y - Z @ beta
    sigma = spec.evaluate(r, h)
    if spec.kind == "trimmed":
        weights = np.zeros(n)
        weights[_smallest(r, h)] = 1.0
    elif spec.kind == "quantile":
        weights = (np.abs(r) <= sigma.value).astype(float)
    else:
        w0 = float(spec.family.weight(0.0))
        scaled = r / sigma.value if sigma.value > 0 else np.zeros(n)
        weights = spec.family.weight(scaled) / w0

    return make_fit(
        problem,
        beta,
        sigma,
        spec.method,
        case_weights=weights,
        h=h,
        N=len(items),
        exhaustive=exhaustive,
        subsample_count="exact",
        skipped=skipped,
        subset=list(subset),
        seed=seed,
        family=spec.family.spec if spec.kind == "m" else None,
        delta=spec.delta if spec.kind == "m" else None,
        iterations=iterations,
        converged=True,
    )


def lms_fit(problem: RegressionProblem, **kwargs) -> RegressionFit:
    return scale_min_fit(problem, "lms", **kwargs)


def lts_fit(problem: RegressionProblem, **kwargs) -> RegressionFit:
    return scale_min_fit(problem, "lts", **kwargs)


def s_fit(
    problem: RegressionProblem,
    family: Union[RhoFamily, str] = "bisquare:1.0",
    delta: float = 0.5,
    **kwargs,
) -> RegressionFit:
    return scale_min_fit(problem, ScaleSpec("m", family=family, delta=delta), **kwargs)
