# -*- coding: utf-8 -*-
# @Time    : 2026-10-21 13:40
# @Author  : robricks
# @Desc    : 运行器, one method per command
import dataclasses
import json
import os
import time
from typing import Any, Callable, Dict, Optional

import numpy as np
from loguru import logger

from robricks import discriminant, multivariate, pca, pls, regression
from robricks.client import Argv
from robricks.core.errors import UsageError
from robricks.lib import linalg
from robricks.pursuit import GridConfig
from robricks.state import G, const
from robricks.utils import pandora
from robricks.utils.csv_ import Dataset, load_csv, save_rows
from robricks.utils.document import ModelDocument, jsonable
from robricks.validate import (
    BootstrapConfig,
    ContaminationSpec,
    CVConfig,
    bootstrap,
    breakdown_scan,
    empirical_influence,
    empirical_maxbias,
    monte_carlo_cv,
    simulate_scenario,
)


@dataclasses.dataclass
class Job:
    """everything a method builder needs"""

    X: np.ndarray
    y: Optional[np.ndarray] = None
    labels: Optional[np.ndarray] = None
    k: Optional[int] = None
    seed: Optional[int] = None
    threads: Optional[int] = None
    efficiency: float = const.MM_EFFICIENCY
    options: dict = dataclasses.field(default_factory=dict)

    def option(self, key: str, default: Any = None) -> Any:
        return self.options.get(key, default)

    def require(self, key: str) -> Any:
        if key not in self.options:
            raise UsageError(f"option -a {key}=... is required", option=key)
        return self.options[key]

    def components(self, default: int = 2) -> int:
        k = default if self.k is None else self.k
        return max(1, min(int(k), self.X.shape[1]))


@dataclasses.dataclass
class Method:
    name: str
    family: str  # regression / pls / pca / covariance / discriminant
    build: Callable[[Job], Any]
    needs: str = ""  # y / label
    complexity: str = "k"  # what a cv grid varies


METHODS: Dict[str, Method] = {}


def method(name: str, family: str, needs: str = "", complexity: str = "k"):
    def register(func):
        METHODS[name] = Method(name, family, func, needs, complexity)
        return func

    return register


def resolve_method(name: Optional[str], default: str) -> Method:
    name = name or default
    if name not in METHODS:
        raise UsageError(f"unknown method: {name}", method=name, known=", ".join(sorted(METHODS)))
    return METHODS[name]


# regression


def _problem(job: Job) -> regression.RegressionProblem:
    return regression.RegressionProblem(job.X, job.y, intercept=bool(job.option("intercept", True)))


@method("ols", "regression", needs="y")
def _ols(job: Job):
    return regression.ols_fit(_problem(job))


@method("l1", "regression", needs="y")
def _l1(job: Job):
    return regression.l1_fit(_problem(job))


@method("m", "regression", needs="y")
def _m(job: Job):
    return regression.m_fit(_problem(job), family=job.option("family", "huber:1.345"))


@method("mm", "regression", needs="y")
def _mm(job: Job):
    return regression.mm_fit(
        _problem(job), efficiency=job.efficiency, seed=job.seed, threads=job.threads, N=job.option("N", "auto")
    )


@method("lts", "regression", needs="y")
def _lts(job: Job):
    return regression.lts_fit(
        _problem(job), seed=job.seed, threads=job.threads, h=job.option("h"), N=job.option("N", "auto")
    )


@method("lms", "regression", needs="y")
def _lms(job: Job):
    return regression.lms_fit(
        _problem(job), seed=job.seed, threads=job.threads, h=job.option("h"), N=job.option("N", "auto")
    )


@method("s", "regression", needs="y")
def _s(job: Job):
    return regression.s_fit(
        _problem(job),
        family=job.option("family", "bisquare:1.0"),
        delta=job.option("delta", 0.5),
        seed=job.seed,
        threads=job.threads,
        N=job.option("N", "auto"),
    )


@method("lasso", "regression", needs="y", complexity="lam")
def _lasso(job: Job):
    return regression.lasso_fit(_problem(job), lam=job.require("lam"))


@method("enet", "regression", needs="y", complexity="lam")
def _enet(job: Job):
    return regression.enet_fit(_problem(job), lam=job.require("lam"), mu=job.require("mu"))


@method("sparse-lts", "regression", needs="y", complexity="lam")
def _sparse_lts(job: Job):
    return regression.sparse_lts_fit(
        _problem(job),
        lam=job.require("lam"),
        h=job.option("h"),
        n_starts=job.option("n_starts", const.SPARSE_LTS_STARTS),
        seed=job.seed,
        threads=job.threads,
    )


# pls


def _prm_config(job: Job) -> pls.PRMConfig:
    return pandora.invoke(pls.PRMConfig, {**job.options, "seed": job.seed})


@method("pls", "pls", needs="y")
def _pls(job: Job):
    return pls.pls_fit(job.X, job.y, job.components())


@method("snipls", "pls", needs="y")
def _snipls(job: Job):
    return pls.snipls_fit(job.X, job.y, job.components(), eta=job.require("eta"))


@method("sign-pls", "pls", needs="y")
def _sign_pls(job: Job):
    return pls.spatial_sign_pls(job.X, job.y, job.components())


@method("prm", "pls", needs="y")
def _prm(job: Job):
    return pls.prm_fit(job.X, job.y, job.components(), _prm_config(job))


@method("sprm", "pls", needs="y")
def _sprm(job: Job):
    return pls.sprm_fit(job.X, job.y, job.components(), eta=job.require("eta"), cfg=_prm_config(job))


# pca


@method("pca", "pca")
def _pca(job: Job):
    return pca.classical_pca(job.X, job.k)


@method("spherical-pca", "pca")
def _spherical_pca(job: Job):
    return pca.spherical_pca(job.X, job.k)


@method("maronna-pca", "pca")
def _maronna_pca(job: Job):
    return pca.maronna_pca(job.X, job.components(), family=job.option("family", "bisquare:1.0"))


@method("pp-pca", "pca")
def _pp_pca(job: Job):
    cfg = pandora.invoke(GridConfig, {k: v for k, v in job.options.items() if k != "index"})
    return pca.pp_pca(job.X, job.components(), index=job.option("index", "mad"), cfg=cfg)


@method("cov-pca", "pca")
def _cov_pca(job: Job):
    return pca.covariance_pca(job.X, job.k, estimator=job.option("estimator", "mcd"), seed=job.seed)


# location / scatter


@method("classical", "covariance")
def _classical(job: Job):
    return multivariate.classical_estimate(job.X)


@method("mcd", "covariance")
def _mcd(job: Job):
    return multivariate.mcd_fit(
        job.X,
        h=job.option("h"),
        n_starts=job.option("n_starts", const.MCD_STARTS),
        seed=job.seed,
        threads=job.threads,
    )


@method("mcd-reweighted", "covariance")
def _mcd_reweighted(job: Job):
    return multivariate.reweighted_mcd(
        job.X,
        quantile=job.option("quantile", 0.975),
        h=job.option("h"),
        seed=job.seed,
        threads=job.threads,
    )


@method("stahel-donoho", "covariance")
def _stahel_donoho(job: Job):
    return multivariate.stahel_donoho_fit(job.X, n_dirs=job.option("n_dirs"), seed=job.seed)


@method("sign-cov", "covariance")
def _sign_cov(job: Job):
    return multivariate.sign_covariance(job.X, center=job.option("center", "spatial"))


# discriminant


def _grouped(job: Job) -> discriminant.GroupedData:
    return discriminant.GroupedData.from_labels(job.X, job.labels)


@method("lda", "discriminant", needs="label")
def _lda(job: Job):
    return discriminant.estimate_groups(
        _grouped(job),
        estimator=job.option("estimator", "classical"),
        pooling=job.option("pooling", "pooled-average"),
        priors=job.option("priors"),
        seed=job.seed,
    )


@method("qda", "discriminant", needs="label")
def _qda(job: Job):
    return discriminant.estimate_groups(
        _grouped(job),
        estimator=job.option("estimator", "classical"),
        pooling="per-group",
        priors=job.option("priors"),
        seed=job.seed,
    )


@method("fisher", "discriminant", needs="label")
def _fisher(job: Job):
    return discriminant.fisher_fit(
        _grouped(job), estimator=job.option("estimator", "classical"), priors=job.option("priors"), seed=job.seed
    )


@method("dpls", "discriminant", needs="label")
def _dpls(job: Job):
    return discriminant.dpls_fit(
        _grouped(job),
        job.components(),
        coding=job.option("coding", "pm1"),
        variant=job.option("variant", "pls"),
        priors=job.option("priors"),
        seed=job.seed,
    )


@method("sprm-da", "discriminant", needs="label")
def _sprm_da(job: Job):
    return discriminant.sprm_da_fit(
        _grouped(job),
        job.components(),
        eta=job.require("eta"),
        cfg=_prm_config(job),
        coding=job.option("coding", "pm1"),
        priors=job.option("priors"),
    )


@method("pipeline", "discriminant", needs="label")
def _pipeline(job: Job):
    return discriminant.pipeline_fit(
        _grouped(job),
        reducer=job.option("reducer", "robust-pca"),
        dim=job.components(),
        classifier=job.option("classifier", "lda"),
        estimator=job.option("estimator", "mcd"),
        method=job.option("pca", "spherical"),
        priors=job.option("priors"),
        seed=job.seed,
    )


def statistic_of(family: str, model) -> np.ndarray:
    """the parameter vector resampled by bootstrap and tracked by diagnose"""
    if family == "regression":
        return model.beta
    if family == "pls":
        return model.coefficients.ravel()
    if family == "covariance":
        return model.location
    if family == "pca":
        return model.eigenvalues
    raise UsageError(f"no parameter vector for {family} methods", family=family)


class Runner:
    def __init__(self):
        self.st_utime = time.time()

    @staticmethod
    def load(argv: Argv, columns: list = None, response: bool = True) -> Dataset:
        """read ``--in``, or generate ``--scenario`` when no file is given"""
        if argv.input:
            return load_csv(
                argv.input,
                delimiter=argv.delimiter,
                response=argv.response if response else None,
                label=argv.label,
                columns=columns,
            )
        if argv.scenario:
            scenario = simulate_scenario(argv.scenario, seed=G.seed)
            return Dataset(
                columns=[f"x{j + 1}" for j in range(scenario.X.shape[1])],
                X=scenario.X,
                y=scenario.y if response else None,
                labels=None if scenario.labels is None else scenario.labels.astype(str),
                path=f"scenario:{scenario.name}",
                response="y" if scenario.y is not None else None,
                label="label" if scenario.labels is not None else None,
            )
        raise UsageError("either --in or --scenario is required")

    @staticmethod
    def job(argv: Argv, data: Dataset, m: Method) -> Job:
        if m.needs == "y" and data.y is None:
            raise UsageError(f"method {m.name} needs a response column, use --y", method=m.name)
        if m.needs == "label" and data.labels is None:
            raise UsageError(f"method {m.name} needs a label column, use --label", method=m.name)
        k = None
        if argv.components is not None:
            grid = pandora.parse_grid(argv.components)
            if len(grid) != 1:
                raise UsageError("--components takes a single value here", components=argv.components)
            k = int(grid[0])
        return Job(
            X=data.X,
            y=data.y,
            labels=data.labels,
            k=k,
            seed=G.seed,
            threads=G.threads,
            efficiency=const.MM_EFFICIENCY if argv.efficiency is None else argv.efficiency,
            options=dict(argv.args),
        )

    @staticmethod
    def emit(rows: list, argv: Argv, default: str, **info) -> str:
        """csv rows plus a json sidecar holding the config and seed of the run"""
        path = save_rows(rows, argv.out or default, delimiter=argv.delimiter)
        with open(f"{path}.meta.json", "w", encoding="utf-8") as f:
            meta = {"schema": const.SCHEMA_VERSION, "config": argv.config(), "seed": G.seed, **info}
            json.dump(jsonable(meta), f, indent=2)
        logger.info(f"[{argv.command}] wrote {len(rows)} rows to {path}")
        return path

    @staticmethod
    def _stem(path: str) -> str:
        return os.path.splitext(path)[0]

    def fit(self, argv: Argv):
        data = self.load(argv)
        default = "mm" if data.y is not None else "lda" if data.labels is not None else "mcd"
        m = resolve_method(argv.method, default)
        model = m.build(self.job(argv, data, m))
        config = {**argv.config(), "columns": data.columns, "family": m.family}
        doc = ModelDocument.from_model(model, config=config, seed=G.seed)
        doc.diagnostics.update(dataset=jsonable(data.report()))
        path = doc.save(argv.out or "model.json")
        logger.info(f"[fit] {m.name} model written to {path}")

        # plot data next to the document
        stem = self._stem(path)
        if m.family == "pls" and argv.args.get("biplot"):
            save_rows(pls.biplot_rows(model, data.columns), f"{stem}.biplot.csv", delimiter=argv.delimiter)
        if m.family == "covariance" and data.p == 2:
            ellipse = multivariate.tolerance_ellipse(model, argv.args.get("level", 0.975))
            rows = [{"x": x, "y": y} for x, y in multivariate.ellipse_polyline(ellipse, argv.args.get("points", 100))]
            save_rows(rows, f"{stem}.ellipse.csv", delimiter=argv.delimiter)
        if m.family == "discriminant" and data.p == 2 and argv.args.get("grid"):
            lo, hi = data.X.min(axis=0), data.X.max(axis=0)
            rows = discriminant.decision_grid(model, (lo[0], hi[0]), (lo[1], hi[1]), int(argv.args["grid"]))
            save_rows(rows, f"{stem}.grid.csv", delimiter=argv.delimiter)
        return path

    def predict(self, argv: Argv):
        if not argv.model:
            raise UsageError("--model is required")
        doc = ModelDocument.load(argv.model)
        model = doc.to_model()
        data = self.load(argv, columns=doc.config.get("columns"), response=False)
        X = data.X
        if doc.kind in ("regression", "pls"):
            pred = np.asarray(model.predict(X))
            if pred.ndim == 1:
                rows = [{"case": i, "prediction": v} for i, v in enumerate(pred)]
            else:
                rows = [{"case": i, **{f"prediction{j + 1}": v for j, v in enumerate(r)}} for i, r in enumerate(pred)]
        elif doc.kind == "pca":
            scores = model.scores(X)
            rows = [{**{f"score{j + 1}": v for j, v in enumerate(t)}, **r} for t, r in zip(scores, pca.outlier_map(model, X).rows())]
        elif doc.kind == "covariance":
            d = multivariate.mahalanobis(X, model)
            cutoff = linalg.chi2_quantile(0.975, model.p)
            rows = [{"case": i, "distance": v, "flag": v > cutoff} for i, v in enumerate(d)]
        else:
            codes = np.atleast_1d(model.classify(X))
            classes = model.classes
            rows = [{"case": i, "group": int(c), "label": classes[c]} for i, c in enumerate(codes)]
        return self.emit(rows, argv, "predictions.csv", model=argv.model, kind=doc.kind, method=doc.method)

    def cv(self, argv: Argv):
        data = self.load(argv)
        m = resolve_method(argv.method, "pls")
        base = self.job(dataclasses.replace(argv, components=None), data, m)
        if m.family not in ("regression", "pls"):
            raise UsageError(f"cross-validation needs a regression method, got {m.name}", method=m.name)
        if m.complexity == "lam":
            grid = pandora.parse_grid(argv.args.get("grid", argv.components or ""))
        else:
            grid = pandora.parse_grid(argv.components or "1:10")
        if not grid:
            raise UsageError("empty complexity grid, use --components or -a grid=...")

        def fit_family(complexity, X, y):
            if m.complexity == "lam":
                job = dataclasses.replace(base, X=X, y=y, options={**base.options, "lam": complexity})
            else:
                job = dataclasses.replace(base, X=X, y=y, k=int(complexity))
            return m.build(job)

        cfg = CVConfig(
            n_splits=int(argv.args.get("splits", const.CV_SPLITS)),
            test_fraction=float(argv.args.get("test_fraction", const.CV_TEST_FRACTION)),
            trim=const.CV_TRIM if argv.trim is None else argv.trim,
            seed=G.seed,
            threads=G.threads,
        )
        report = monte_carlo_cv(data.X, data.y, fit_family, grid, cfg)
        logger.info(f"[cv] {m.name} {report.summary()}")
        return self.emit(report.rows(), argv, "cv.csv", chosen=report.chosen, one_se=report.one_se)

    def bootstrap(self, argv: Argv):
        data = self.load(argv)
        m = resolve_method(argv.method, "mm" if data.y is not None else "mcd")
        base = self.job(argv, data, m)
        cfg = BootstrapConfig(
            m=int(argv.args.get("m", const.BOOTSTRAP_M)),
            seed=G.seed,
            scale=argv.args.get("scale", "sd"),
            trim=0.1 if argv.trim is None else argv.trim,
            level=float(argv.args.get("level", 0.95)),
            n_replace=argv.args.get("n_replace"),
            threads=G.threads,
        )
        if m.needs == "y":
            report = bootstrap(
                lambda X, y: statistic_of(m.family, m.build(dataclasses.replace(base, X=X, y=y))),
                (data.X, data.y),
                cfg,
            )
        else:
            report = bootstrap(lambda X: statistic_of(m.family, m.build(dataclasses.replace(base, X=X))), data.X, cfg)
        logger.info(f"[bootstrap] {m.name} {report.summary()}")
        return self.emit(report.rows(), argv, "bootstrap.csv", failures=report.failures)

    def diagnose(self, argv: Argv):
        data = self.load(argv)
        m = resolve_method(argv.method, "mm" if data.y is not None else "mcd")
        base = self.job(argv, data, m)
        opts = argv.args
        if m.needs == "y":
            rows = np.column_stack([data.X, data.y])

            def statistic(z):
                return statistic_of(m.family, m.build(dataclasses.replace(base, X=z[:, :-1], y=z[:, -1])))

            kind = "vertical-range"
        else:
            rows = data.X

            def statistic(z):
                return statistic_of(m.family, m.build(dataclasses.replace(base, X=z)))

            kind = "cluster-shift"

        curve = opts.get("curve", "maxbias")
        if curve == "eif":
            z_grid = pandora.parse_grid(opts.get("z", "-10:10"))
            result = empirical_influence(statistic, rows, z_grid, opts.get("index"))
            return self.emit(result.rows(), argv, "eif.csv", curve=curve, index=result.index)

        contamination = ContaminationSpec(
            fraction=float(opts.get("fraction", 0.4)),
            kind=opts.get("contamination", kind),
            shift=opts.get("shift", 10.0),
            z=opts.get("z_point"),
        )
        m_grid = opts.get("m_grid") and pandora.parse_grid(opts["m_grid"])
        trials = int(opts.get("trials", 20))
        if curve == "maxbias":
            result = empirical_maxbias(statistic, rows, contamination, m_grid or None, trials, G.seed, G.threads)
            return self.emit(result.rows(), argv, "maxbias.csv", curve=curve)
        if curve == "breakdown":
            threshold = float(opts.get("threshold", 1e3))
            result = breakdown_scan(statistic, rows, contamination, threshold, m_grid or None, trials, G.seed, G.threads)
            logger.info(f"[diagnose] {m.name} empirical breakdown {result.value:.4g}")
            return self.emit(
                result.curve.rows(),
                argv,
                "breakdown.csv",
                curve=curve,
                breakdown=result.value,
                m=result.m,
                flagged=result.flagged,
                threshold=threshold,
            )
        raise UsageError(f"unknown curve: {curve}", curve=curve)

    def simulate(self, argv: Argv):
        if not argv.scenario:
            raise UsageError("--scenario is required")
        scenario = simulate_scenario(argv.scenario, dict(argv.args), seed=G.seed)
        path = self.emit(
            scenario.rows(),
            argv,
            f"{scenario.name}.csv",
            scenario=scenario.name,
            params=scenario.params,
            truth=scenario.truth,
        )
        save_rows(scenario.truth_rows(), f"{self._stem(path)}.truth.csv", delimiter=argv.delimiter)
        extra = scenario.extra
        if "X_test" in extra:
            rows = []
            for i, x in enumerate(extra["X_test"]):
                row = {f"x{j + 1}": v for j, v in enumerate(x)}
                "y_test" in extra and row.update(y=extra["y_test"][i])
                "labels_test" in extra and row.update(label=int(extra["labels_test"][i]))
                rows.append(row)
            save_rows(rows, f"{self._stem(path)}.test.csv", delimiter=argv.delimiter)
        return path

    def outliers(self, argv: Argv):
        data = self.load(argv)
        m = resolve_method(argv.method, "mcd")
        if m.family != "covariance":
            raise UsageError(f"outliers needs a location/scatter method, got {m.name}", method=m.name)
        job = self.job(argv, data, m)
        est = m.build(job)
        cutoff = linalg.chi2_quantile(0.975, data.p)
        rows = [
            {"case": i, "weight": w, "distance": d, "flag": d > cutoff}
            for i, (w, d) in enumerate(zip(est.case_weights, est.distances))
        ]

        # score / orthogonal distance map of a spherical PCA
        model = pca.spherical_pca(data.X, job.components(min(2, data.p)))
        for row, extra in zip(rows, pca.outlier_map(model, data.X).rows()):
            row.update(
                score_distance=extra["score_distance"],
                orthogonal_distance=extra["orthogonal_distance"],
                pca_flag=extra["flag"],
            )

        if data.y is not None:
            r = resolve_method(argv.args.get("regression"), "mm")
            if r.family != "regression":
                raise UsageError(f"not a regression method: {r.name}", method=r.name)
            fit = r.build(dataclasses.replace(job, options=dict(argv.args)))
            diagnostics = regression.regression_diagnostics(fit, data.X, seed=G.seed)
            for row, extra in zip(rows, diagnostics.rows()):
                row.update(standardized=extra["standardized"], leverage=extra["leverage"], kind=extra["kind"])
        return self.emit(rows, argv, "outliers.csv", method=m.name, cutoff=cutoff)
