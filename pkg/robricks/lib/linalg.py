# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 10:20
# @Author  : robricks
# @Desc    : small linear algebra shared by the estimators
from typing import Optional, Tuple

import numpy as np
from scipy import linalg, stats

from robricks.core.errors import InputError, SingularityError

RANK_TOL = 1e-10


def as_matrix(X, name="X") -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] == 0:
        raise InputError(f"{name} must be a non-empty 2-d array", shape=X.shape)
    if not np.all(np.isfinite(X)):
        raise InputError(f"{name} contains non-finite entries")
    return X


def as_vector(y, n: Optional[int] = None, name="y") -> np.ndarray:
    y = np.asarray(y, dtype=float).ravel()
    if n is not None and y.size != n:
        raise InputError(f"{name} must have {n} entries", size=y.size)
    if not np.all(np.isfinite(y)):
        raise InputError(f"{name} contains non-finite entries")
    return y


def rank(X: np.ndarray, tol: float = RANK_TOL) -> int:
    if X.size == 0:
        return 0
    s = linalg.svdvals(X)
    return int(np.sum(s > tol * max(s[0], 1e-300) * max(X.shape)))


def lstsq(X: np.ndarray, y: np.ndarray, weights: np.ndarray = None) -> np.ndarray:
    """
    (weighted) least squares through a pivoted QR

    rank deficiency raises instead of falling back to a pseudo-inverse
    """
    if weights is not None:
        sw = np.sqrt(weights)
        X = X * sw[:, None]
        y = y * sw if y.ndim == 1 else y * sw[:, None]
    n, p = X.shape
    if n < p:
        raise SingularityError("fewer rows than columns", n=n, p=p)
    q, r, piv = linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[-1] <= RANK_TOL * max(diag[0], 1e-300) * max(n, p):
        raise SingularityError("design matrix is rank deficient", n=n, p=p)
    z = linalg.solve_triangular(r, q.T @ y)
    beta = np.empty_like(z)
    beta[piv] = z
    return beta


def solve_exact(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """square system, used for elemental subsets"""
    try:
        lu, piv = linalg.lu_factor(X, check_finite=False)
    except (linalg.LinAlgError, ValueError) as e:
        raise SingularityError("singular elemental subset") from e
    d = np.abs(np.diag(lu))
    if d.min() <= RANK_TOL * max(d.max(), 1e-300):
        raise SingularityError("singular elemental subset")
    return linalg.lu_solve((lu, piv), y, check_finite=False)


def inverse(C: np.ndarray, name="scatter") -> np.ndarray:
    try:
        c = linalg.cho_factor(C, check_finite=False)
    except linalg.LinAlgError as e:
        raise SingularityError(f"{name} is not positive definite") from e
    return linalg.cho_solve(c, np.eye(C.shape[0]), check_finite=False)


def logdet(C: np.ndarray, name="scatter") -> float:
    sign, value = np.linalg.slogdet(C)
    if sign <= 0:
        raise SingularityError(f"{name} is singular", sign=float(sign))
    return float(value)


def symmetrize(C: np.ndarray) -> np.ndarray:
    return (C + C.T) / 2


def weighted_mean_cov(X: np.ndarray, weights: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """weighted mean and covariance, both normalised by sum(weights)"""
    total = weights.sum()
    if total <= 0:
        raise SingularityError("all weights are zero")
    mu = weights @ X / total
    Z = X - mu
    return mu, symmetrize((Z * weights[:, None]).T @ Z / total)


def eigh_desc(C: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """eigen-decomposition sorted by decreasing eigenvalue, signs fixed"""
    values, vectors = linalg.eigh(symmetrize(C))
    order = np.argsort(values)[::-1]
    return values[order], fix_signs(vectors[:, order])


def fix_signs(V: np.ndarray) -> np.ndarray:
    # 最大分量为正
    V = np.array(V, dtype=float, copy=True)
    for j in range(V.shape[1]):
        i = np.argmax(np.abs(V[:, j]))
        if V[i, j] < 0:
            V[:, j] = -V[:, j]
    return V


def chi2_quantile(q: float, df: int) -> float:
    return float(stats.chi2.ppf(q, df))


def chi2_cdf(x: float, df: int) -> float:
    return float(stats.chi2.cdf(x, df))


def principal_angles(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """principal angles (radians) between the column spaces of A and B"""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    A = A[:, None] if A.ndim == 1 else A
    B = B[:, None] if B.ndim == 1 else B
    return linalg.subspace_angles(A, B)


def angle(a: np.ndarray, b: np.ndarray) -> float:
    """unsigned angle in degrees between two directions, sign ignored"""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    c = abs(a @ b) / (np.linalg.norm(a) * np.linalg.norm(b))
    return float(np.degrees(np.arccos(min(c, 1.0))))
