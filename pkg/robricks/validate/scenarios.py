# -*- coding: utf-8 -*-
# @Time    : 2026-10-20 19:02
# @Author  : robricks
# @Desc    : seeded data generators for the robustness narratives
import dataclasses
import math
from typing import Callable, Dict, Optional

import numpy as np

from robricks.core.errors import InputError
from robricks.lib import streams


@dataclasses.dataclass
class Scenario:
    """
    generated data plus ground truth; ``contaminated`` flags the rows that
    were not drawn from the clean model and ``extra`` carries clean test sets
    """

    name: str
    X: np.ndarray
    y: Optional[np.ndarray] = None
    labels: Optional[np.ndarray] = None
    contaminated: Optional[np.ndarray] = None
    truth: dict = dataclasses.field(default_factory=dict)
    extra: dict = dataclasses.field(default_factory=dict)
    seed: int = 0
    params: dict = dataclasses.field(default_factory=dict)

    def rows(self) -> list:
        """data rows only, ready to be read back by ``load_csv``"""
        ret = []
        for i, x in enumerate(self.X):
            row = {f"x{j + 1}": v for j, v in enumerate(x)}
            self.y is not None and row.update(y=self.y[i])
            self.labels is not None and row.update(label=int(self.labels[i]))
            ret.append(row)
        return ret

    def truth_rows(self) -> list:
        flags = np.zeros(self.X.shape[0], dtype=bool) if self.contaminated is None else self.contaminated
        return [{"case": i, "contaminated": bool(f)} for i, f in enumerate(flags)]


def _pick(rng, n, fraction):
    m = int(math.ceil(fraction * n - 1e-9))
    mask = np.zeros(n, dtype=bool)
    mask[rng.choice(n, size=m, replace=False)] = True
    return mask


def fig2_bivariate(rng, n=100, rho=0.8, outliers=((5.0, 4.5), (-1.0, 4.0), (2.0, -2.0))):
    """
    a correlated normal cloud with three single outliers: one far along the
    main axis, one outlying in the second coordinate only and one that only
    breaks the correlation
    """
    cov = np.array([[1.0, rho], [rho, 1.0]])
    X = rng.multivariate_normal(np.zeros(2), cov, size=n)
    points = np.atleast_2d(np.asarray(outliers, dtype=float))
    mask = _pick(rng, n, points.shape[0] / n)
    X[mask] = points
    return dict(X=X, contaminated=mask, truth={"location": np.zeros(2), "scatter": cov})


def fig3_trivariate_pca(rng, n=100, eps=0.1, variances=(9.0, 1.0, 0.25), cluster=(0.0, 12.0, 0.0)):
    X = rng.normal(size=(n, 3)) * np.sqrt(variances)
    mask = _pick(rng, n, eps)
    X[mask] = np.asarray(cluster) + 0.1 * rng.normal(size=(mask.sum(), 3))
    return dict(X=X, contaminated=mask, truth={"direction": np.array([1.0, 0.0, 0.0])})


def _line(rng, n, beta, sigma, low=0.0, high=10.0):
    x = rng.uniform(low, high, size=n)
    return x, beta[0] + beta[1] * x + sigma * rng.normal(size=n)


def fig5_swamping(rng, n=50, eps=0.2, beta=(2.0, 1.5), sigma=1.0, cloud=(8.0, 2.0)):
    x, y = _line(rng, n, beta, sigma)
    mask = _pick(rng, n, eps)
    x[mask] = cloud[0] + 0.5 * rng.normal(size=mask.sum())
    y[mask] = cloud[1] + 0.5 * rng.normal(size=mask.sum())
    return dict(X=x[:, None], y=y, contaminated=mask, truth={"beta": np.asarray(beta)})


def fig6_eif(rng, n=30, beta=(1.0, 1.0), sigma=0.5):
    x = rng.normal(size=n)
    y = beta[0] + beta[1] * x + sigma * rng.normal(size=n)
    return dict(X=x[:, None], y=y, contaminated=np.zeros(n, dtype=bool), truth={"beta": np.asarray(beta)})


def fig7_maxbias(rng, n=50, beta=(2.0, 1.5), sigma=1.0):
    x, y = _line(rng, n, beta, sigma)
    return dict(X=x[:, None], y=y, contaminated=np.zeros(n, dtype=bool), truth={"beta": np.asarray(beta)})


def fig8_lda(rng, n=100, eps=0.1, shift=(4.5, 0.0), spread=0.5):
    """
    two groups of n rows with unequal scatters, I and spread^2 I; eps of the
    first group are drawn from the second group's model but keep label 0
    """
    means = np.array([np.zeros(2), np.asarray(shift, dtype=float)])
    scales = np.array([1.0, spread])

    def draw(j, m):
        return means[j] + scales[j] * rng.normal(size=(m, 2))

    X = np.vstack([draw(0, n), draw(1, n)])
    labels = np.repeat([0, 1], n)
    mask = np.zeros(2 * n, dtype=bool)
    mask[:n] = _pick(rng, n, eps)
    X[mask] = draw(1, int(mask.sum()))
    scatters = np.array([s**2 * np.eye(2) for s in scales])
    return dict(X=X, labels=labels, contaminated=mask, truth={"means": means, "scatters": scatters})


def fig9_mcd(rng, n=100, eps=0.2, rho=0.7, shift=(3.0, -3.0)):
    cov = np.array([[1.0, rho], [rho, 1.0]])
    X = rng.multivariate_normal(np.zeros(2), cov, size=n)
    mask = _pick(rng, n, eps)
    X[mask] = rng.multivariate_normal(shift, 0.25 * np.eye(2), size=mask.sum())
    return dict(X=X, contaminated=mask, truth={"correlation": rho, "scatter": cov})


def fig9b_t2(rng, n=100, rho=0.7, df=2):
    cov = np.array([[1.0, rho], [rho, 1.0]])
    Z = rng.multivariate_normal(np.zeros(2), cov, size=n)
    w = rng.chisquare(df, size=n) / df
    return dict(X=Z / np.sqrt(w)[:, None], contaminated=np.zeros(n, dtype=bool), truth={"correlation": rho})


def glass_analogue(rng, n=41, bad=6, p=20, n_test=200, noise=0.1):
    """
    two-factor calibration data; ``bad`` training rows sit far out on the
    first factor with a response that ignores it
    """
    P = rng.normal(size=(p, 2))
    P /= np.linalg.norm(P, axis=0)
    q = np.array([1.0, 0.5])

    def draw(m):
        T = rng.normal(size=(m, 2)) * np.array([2.0, 1.0])
        return T @ P.T + noise * rng.normal(size=(m, p)), T @ q + noise * rng.normal(size=m)

    X, y = draw(n)
    mask = np.zeros(n, dtype=bool)
    mask[rng.choice(n, size=bad, replace=False)] = True
    T_bad = np.column_stack([np.full(bad, 8.0), rng.normal(size=bad)])
    X[mask] = T_bad @ P.T + noise * rng.normal(size=(bad, p))
    y[mask] = noise * rng.normal(size=bad)
    X_test, y_test = draw(n_test)
    return dict(
        X=X,
        y=y,
        contaminated=mask,
        truth={"loadings": P, "q": q},
        extra={"X_test": X_test, "y_test": y_test},
    )


def two_group_mislabels(rng, n=60, p=10, eps=0.1, shift=2.0, active=3):
    """two groups of n rows; eps of every group carry the other group's label"""
    mu = np.zeros(p)
    mu[:active] = shift
    X = np.vstack([rng.normal(size=(n, p)), rng.normal(size=(n, p)) + mu])
    labels = np.repeat([0, 1], n)
    mask = np.zeros(2 * n, dtype=bool)
    mask[:n] = _pick(rng, n, eps)
    mask[n:] = _pick(rng, n, eps)
    labels[mask] = 1 - labels[mask]
    return dict(X=X, labels=labels, contaminated=mask, truth={"shift": mu})


def high_dim_groups(rng, n=30, p=200, eps=0.1, shift=3.0, active=5, spike=50.0, n_test=200):
    """
    two groups of n rows in p > 2n dimensions; eps of every group are moved
    by ``spike`` along their own random direction
    """
    mu = np.zeros(p)
    mu[:active] = shift

    def draw(m):
        X = np.vstack([rng.normal(size=(m, p)), rng.normal(size=(m, p)) + mu])
        return X, np.repeat([0, 1], m)

    X, labels = draw(n)
    mask = np.zeros(2 * n, dtype=bool)
    mask[:n] = _pick(rng, n, eps)
    mask[n:] = _pick(rng, n, eps)
    U = rng.normal(size=(mask.sum(), p))
    X[mask] += spike * U / np.linalg.norm(U, axis=1)[:, None]
    X_test, labels_test = draw(n_test)
    return dict(
        X=X,
        labels=labels,
        contaminated=mask,
        truth={"shift": mu},
        extra={"X_test": X_test, "labels_test": labels_test},
    )


SCENARIOS: Dict[str, Callable] = {
    "fig2-bivariate": fig2_bivariate,
    "fig3-trivariate-pca": fig3_trivariate_pca,
    "fig5-swamping": fig5_swamping,
    "fig6-eif": fig6_eif,
    "fig7-maxbias": fig7_maxbias,
    "fig8-lda": fig8_lda,
    "fig9-mcd": fig9_mcd,
    "fig9b-t2": fig9b_t2,
    "glass-analogue": glass_analogue,
    "two-group-mislabels": two_group_mislabels,
    "high-dim-groups": high_dim_groups,
}
ALIASES = {
    "fig2": "fig2-bivariate",
    "fig3": "fig3-trivariate-pca",
    "fig4": "fig3-trivariate-pca",
    "fig5": "fig5-swamping",
    "fig6": "fig6-eif",
    "fig7": "fig7-maxbias",
    "fig8": "fig8-lda",
    "fig10": "fig8-lda",
    "fig9": "fig9-mcd",
}


def simulate_scenario(name: str, params: Optional[dict] = None, seed: Optional[int] = None) -> Scenario:
    """
    build a named scenario; ``params`` override the generator's keyword
    defaults and the same (name, params, seed) always gives the same data
    """
    key = ALIASES.get(name, name)
    if key not in SCENARIOS:
        raise InputError(f"unknown scenario: {name}", name=name, known=sorted(SCENARIOS))
    params = dict(params or {})
    seed = streams.resolve_seed(seed)
    try:
        out = SCENARIOS[key](streams.stream(seed), **params)
    except TypeError as e:
        raise InputError(f"bad parameters for {key}: {e}", params=params) from e
    return Scenario(name=key, seed=seed, params=params, **out)
