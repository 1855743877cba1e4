# -*- coding: utf-8 -*-
# @Time    : 2026-10-22 19:30
# @Author  : robricks
# @Desc    : csv datasets, model documents and the command line
import json

import numpy as np
import pytest

from robricks import discriminant, multivariate, pls, regression
from robricks.client.manage import run_command
from robricks.core.errors import InputError
from robricks.utils.csv_ import DatasetIOError, dataset_rows, load_csv, save_rows
from robricks.utils.document import ModelDocument
from robricks.utils.items import Items, format_value


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def line_csv(tmp_path, line_data):
    X, y = line_data
    rows = [{"x1": a, "x2": b, "y": v} for (a, b), v in zip(X, y)]
    return save_rows(rows, str(tmp_path / "line.csv"))


def test_load_integers(tmp_path):
    path = write(tmp_path / "d.csv", "a,b\n1,2\n3,4\n5,6\n")
    data = load_csv(path)
    np.testing.assert_array_equal(data.X, [[1, 2], [3, 4], [5, 6]])
    assert data.columns == ["a", "b"]
    assert data.y is None and data.skipped == []

    plain = load_csv(write(tmp_path / "e.csv", "1;2,5\n3;4\n"), delimiter=";", decimal=",", header=False)
    np.testing.assert_array_equal(plain.X, [[1.0, 2.5], [3.0, 4.0]])
    assert plain.columns == ["x1", "x2"]


def test_load_rejects_rows(tmp_path):
    path = write(tmp_path / "d.csv", "a,b,y,g\n1,2,3,u\n4,NA,6,v\n7,8,9,u\n1,2\n")
    data = load_csv(path, response="y", label="g")
    assert data.n == 2
    np.testing.assert_array_equal(data.y, [3.0, 9.0])
    np.testing.assert_array_equal(data.labels, ["u", "u"])
    assert [s["line"] for s in data.skipped] == [3, 5]
    assert data.report()["skipped"] == 2


def test_load_errors(tmp_path):
    with pytest.raises(DatasetIOError):
        load_csv(str(tmp_path / "missing.csv"))
    with pytest.raises(DatasetIOError):
        load_csv(write(tmp_path / "empty.csv", "a,b\n"))
    with pytest.raises(InputError):
        load_csv(write(tmp_path / "d.csv", "a,b\n1,2\n"), response="y")


def test_rows_survive_csv(tmp_path, rng):
    X = rng.normal(size=(5, 3)) * 1e3
    data = load_csv(save_rows([dict(zip("abc", x)) for x in X], str(tmp_path / "r.csv")))
    np.testing.assert_array_equal(data.X, X)
    assert dataset_rows(data)[0] == dict(zip("abc", X[0]))


def test_items():
    items = Items([{"a": 1}, {"b": True, "a": 2}])
    assert items.columns == ["a", "b"]
    items.setdefault("c", None)
    assert items[0]["c"] is None
    assert format_value(np.float64(0.1)) == "0.10000000000000001"
    assert format_value(np.bool_(True)) == 1
    assert format_value([1.0, 2.0], 3) == "1 2"


def _round_trip(model, tmp_path):
    path = ModelDocument.from_model(model, config={"k": 1}, seed=5).save(str(tmp_path / "m.json"))
    doc = ModelDocument.load(path)
    assert doc.seed == 5 and doc.config == {"k": 1}
    return doc.to_model()


def test_documents_round_trip(tmp_path, line_data, rng):
    X, y = line_data
    fit = regression.mm_fit(regression.RegressionProblem(X, y, intercept=True), seed=1)
    back = _round_trip(fit, tmp_path)
    np.testing.assert_allclose(back.predict(X), fit.predict(X), rtol=0, atol=1e-12)
    assert back.sigma == fit.sigma

    model = pls.prm_fit(X, y, 2, pls.PRMConfig(seed=1))
    np.testing.assert_allclose(_round_trip(model, tmp_path).predict(X), model.predict(X), rtol=0, atol=1e-12)

    est = multivariate.mcd_fit(X, seed=1, n_starts=50)
    back = _round_trip(est, tmp_path)
    np.testing.assert_allclose(multivariate.mahalanobis(X, back), multivariate.mahalanobis(X, est), atol=1e-12)

    labels = np.where(X[:, 0] > 0, "hi", "lo")
    rule = discriminant.estimate_groups(discriminant.GroupedData.from_labels(X, labels))
    back = _round_trip(rule, tmp_path)
    np.testing.assert_array_equal(back.classify(X), rule.classify(X))
    assert back.classes == rule.classes


def test_document_schema(tmp_path):
    path = write(tmp_path / "m.json", json.dumps({"schema": 99, "kind": "pca"}))
    with pytest.raises(InputError):
        ModelDocument.load(path)
    with pytest.raises(InputError):
        ModelDocument.from_model(object())


def test_fit_then_predict(tmp_path, line_csv):
    model = str(tmp_path / "m.json")
    assert run_command(f"fit --method mm --efficiency 0.85 --in {line_csv} --y y --out {model} --seed 3") == 0
    doc = ModelDocument.load(model)
    assert doc.diagnostics["k"] == pytest.approx(3.44)
    assert doc.seed == 3
    assert doc.config["cmd"].startswith("robricks fit")

    out = str(tmp_path / "pred.csv")
    assert run_command(["predict", "--model", model, "--in", line_csv, "--out", out]) == 0
    data = load_csv(line_csv, response="y")
    pred = load_csv(out, columns=["prediction"]).X[:, 0]
    np.testing.assert_allclose(pred, doc.to_model().predict(data.X), rtol=0, atol=1e-12)
    meta = json.loads(open(f"{out}.meta.json", encoding="utf-8").read())
    assert meta["kind"] == "regression" and meta["seed"] is not None


def test_exit_codes(tmp_path, line_csv):
    assert run_command("fit --bogus") == 2
    assert run_command(f"fit --method nope --in {line_csv} --y y") == 2
    assert run_command(f"fit --method pls --in {line_csv}") == 2
    assert run_command(f"fit --in {tmp_path / 'missing.csv'} --y y") == 1

    twin = write(tmp_path / "twin.csv", "a,b,y\n1,2,1\n2,4,3\n3,6,2\n4,8,5\n")
    assert run_command(f"fit --method ols --in {twin} --y y --out {tmp_path / 'o.json'}") == 1


def test_simulate_is_reproducible(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_command(f"simulate --scenario fig9 --seed 7 --out {first}") == 0
    assert run_command(f"simulate --scenario fig9 --seed 7 --out {second}") == 0
    assert first.read_bytes() == second.read_bytes()
    meta = json.loads((tmp_path / "a.csv.meta.json").read_text(encoding="utf-8"))
    assert meta["seed"] == 7 and meta["scenario"] == "fig9-mcd"


def test_cv_records_choice(tmp_path, rng):
    T = rng.normal(size=(60, 3)) * [3.0, 2.0, 1.0]
    X = T @ rng.normal(size=(3, 6))
    rows = [{**{f"x{j}": v for j, v in enumerate(x)}, "y": t @ [1.0, -1.0, 0.5]} for x, t in zip(X, T)]
    path = save_rows(rows, str(tmp_path / "rank.csv"))
    out = str(tmp_path / "cv.csv")
    code = run_command(f"cv --method pls --components 1:5 --trim 0.15 --in {path} --y y -a splits=10 --seed 1 --out {out}")
    assert code == 0
    meta = json.loads(open(f"{out}.meta.json", encoding="utf-8").read())
    assert meta["chosen"] == 3
    assert meta["config"]["trim"] == 0.15


def test_outliers(tmp_path):
    data = str(tmp_path / "fig9.csv")
    assert run_command(f"simulate --scenario fig9 --seed 2 --out {data}") == 0
    truth = load_csv(str(tmp_path / "fig9.truth.csv"), columns=["contaminated"]).X[:, 0].astype(bool)
    assert truth.sum() == 20
    out = str(tmp_path / "flags.csv")
    assert run_command(f"outliers --in {data} --method mcd-reweighted --out {out} --seed 2") == 0
    table = load_csv(out, columns=["weight", "distance", "flag", "score_distance"])
    assert table.n == 100
    flags = table.X[:, 2].astype(bool)
    assert flags[truth].mean() > 0.9
    assert flags[~truth].mean() < 0.1
