# -*- coding: utf-8 -*-
# @Time    : 2026-10-21 11:10
# @Author  : robricks
# @Desc    : versioned json documents of fitted models
import dataclasses
import json
import os
from typing import Any, Optional

import numpy as np

from robricks.core.errors import InputError
from robricks.discriminant import DiscriminantModel
from robricks.discriminant.reduce import Pipeline
from robricks.lib.scales import ScaleEstimate
from robricks.multivariate import CovarianceEstimate
from robricks.pca import PCAModel
from robricks.pls import PLSModel
from robricks.regression import RegressionFit
from robricks.state import const


def jsonable(obj: Any) -> Any:
    """arrays to nested lists, numpy scalars to python; unknown objects to their repr"""
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, ScaleEstimate):
        return obj.to_dict()
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return repr(obj)


def _array(value) -> Optional[np.ndarray]:
    return None if value is None else np.asarray(value, dtype=float)


def _weights_summary(w) -> dict:
    w = np.asarray(w, dtype=float)
    if w.size == 0:
        return {}
    return {"min": float(w.min()), "median": float(np.median(w)), "below_half": int(np.sum(w < 0.5))}


def _meta(meta: dict) -> dict:
    # 只保留标量诊断信息
    return {k: jsonable(v) for k, v in meta.items() if isinstance(v, (bool, int, float, str, np.generic))}


@dataclasses.dataclass
class ModelDocument:
    """
    one fitted model as a json document

    floats are written by json's shortest round-trip repr, so loading gives
    back the exact parameters
    """

    kind: str
    method: str
    params: dict
    config: dict = dataclasses.field(default_factory=dict)
    seed: Optional[int] = None
    diagnostics: dict = dataclasses.field(default_factory=dict)
    schema: int = const.SCHEMA_VERSION

    @classmethod
    def from_model(cls, model, config: dict = None, seed: Optional[int] = None) -> "ModelDocument":
        config = jsonable(config or {})
        if isinstance(model, RegressionFit):
            params = {
                "beta": model.beta,
                "intercept": model.intercept,
                "sigma": model.sigma,
                "case_weights": model.case_weights,
                "residuals": model.residuals,
            }
            diagnostics = {
                **_meta(model.meta),
                "iterations": model.iterations,
                "converged": model.converged,
                "weights": _weights_summary(model.case_weights),
            }
            return cls("regression", model.method, jsonable(params), config, seed, diagnostics)

        if isinstance(model, PLSModel):
            fields = (
                "x_center", "x_scale", "y_center", "weights", "rotations", "loadings",
                "scores", "coefficients", "case_weights", "n_components", "eta",
                "transform", "univariate",
            )
            params = {k: getattr(model, k) for k in fields}
            diagnostics = {**_meta(model.meta), "weights": _weights_summary(model.case_weights)}
            return cls("pls", model.method, jsonable(params), config, seed, diagnostics)

        if isinstance(model, PCAModel):
            params = {"center": model.center, "loadings": model.loadings, "eigenvalues": model.eigenvalues}
            return cls("pca", model.method, jsonable(params), config, seed, _meta(model.meta))

        if isinstance(model, CovarianceEstimate):
            params = {
                "location": model.location,
                "scatter": model.scatter,
                "distances": model.distances,
                "case_weights": model.case_weights,
            }
            diagnostics = {**_meta(model.meta), "weights": _weights_summary(model.case_weights)}
            return cls("covariance", model.method, jsonable(params), config, seed, diagnostics)

        if isinstance(model, DiscriminantModel):
            params = {
                "kind": model.kind,
                "classes": list(model.classes),
                "priors": model.priors,
                "means": model.means,
                "scatters": model.scatters,
                "pooled": model.pooled,
                "basis": model.basis,
                "threshold": model.threshold,
                "codes": model.codes,
                "reducer": model.reducer and cls.from_model(model.reducer).to_dict(),
                "inner": model.inner and cls.from_model(model.inner).to_dict(),
            }
            return cls("discriminant", model.kind, jsonable(params), config, seed, _meta(model.meta))

        if isinstance(model, Pipeline):
            params = {
                "reducer": cls.from_model(model.reducer).to_dict(),
                "rule": cls.from_model(model.rule).to_dict(),
                "kind": model.kind,
            }
            return cls("pipeline", model.kind, params, config, seed, _meta(model.meta))

        raise InputError(f"cannot store {type(model).__name__}", type=type(model).__name__)

    def to_model(self):
        p = self.params
        if self.kind == "regression":
            beta = _array(p["beta"])
            residuals = _array(p["residuals"])
            return RegressionFit(
                beta=beta,
                sigma=ScaleEstimate(**p["sigma"]),
                residuals=residuals,
                case_weights=_array(p["case_weights"]),
                method=self.method,
                intercept=bool(p["intercept"]),
                meta=dict(self.diagnostics),
            )

        if self.kind == "pls":
            k = int(p["n_components"])
            arrays = {
                key: _array(p[key]).reshape(-1, k) if key in ("weights", "rotations", "loadings", "scores") else _array(p[key])
                for key in ("x_center", "x_scale", "y_center", "weights", "rotations", "loadings", "scores", "case_weights")
            }
            coefficients = _array(p["coefficients"]).reshape(arrays["x_center"].size, -1)
            return PLSModel(
                **arrays,
                coefficients=coefficients,
                n_components=k,
                eta=float(p["eta"]),
                method=self.method,
                transform=p["transform"],
                univariate=bool(p["univariate"]),
                meta=dict(self.diagnostics),
            )

        if self.kind == "pca":
            center = _array(p["center"])
            loadings = _array(p["loadings"]).reshape(center.size, -1)
            return PCAModel(center, loadings, _array(p["eigenvalues"]), self.method, meta=dict(self.diagnostics))

        if self.kind == "covariance":
            return CovarianceEstimate(
                _array(p["location"]),
                np.atleast_2d(_array(p["scatter"])),
                _array(p["distances"]),
                _array(p["case_weights"]),
                self.method,
                meta=dict(self.diagnostics),
            )

        if self.kind == "discriminant":
            nested = {k: p[k] and ModelDocument.from_dict(p[k]).to_model() for k in ("reducer", "inner")}
            means = np.atleast_2d(_array(p["means"]))
            basis = _array(p["basis"])
            return DiscriminantModel(
                kind=p["kind"],
                classes=tuple(p["classes"]),
                priors=_array(p["priors"]),
                means=means,
                scatters=_array(p["scatters"]),
                pooled=_array(p["pooled"]),
                basis=None if basis is None else basis.reshape(means.shape[1], -1),
                threshold=p["threshold"],
                codes=None if p["codes"] is None else tuple(p["codes"]),
                meta=dict(self.diagnostics),
                **nested,
            )

        if self.kind == "pipeline":
            return Pipeline(
                ModelDocument.from_dict(p["reducer"]).to_model(),
                ModelDocument.from_dict(p["rule"]).to_model(),
                p["kind"],
                meta=dict(self.diagnostics),
            )

        raise InputError(f"unknown document kind: {self.kind}", kind=self.kind)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ModelDocument":
        if data.get("schema") != const.SCHEMA_VERSION:
            raise InputError("unsupported model document schema", schema=data.get("schema"))
        fields = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in fields})

    def save(self, path: str) -> str:
        dirname = os.path.dirname(path)
        dirname and os.makedirs(dirname, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)
        return path

    @classmethod
    def load(cls, path: str) -> "ModelDocument":
        with open(path, encoding="utf-8") as f:
            return cls.from_dict(json.load(f))
