# -*- coding: utf-8 -*-
# @Time    : 2026-10-21 10:02
# @Author  : robricks
# @Desc    : numeric csv datasets
import csv
import dataclasses
import math
import os
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from robricks.core.errors import InputError
from robricks.utils.items import Items

MISSING = ("", "na", "nan", "null", "none", "?")


class DatasetIOError(InputError, OSError):
    ...


@dataclasses.dataclass
class Dataset:
    """
    numeric columns of a csv file

    ``columns`` names the columns of ``X``; the response and the label
    columns are split off when named
    """

    columns: List[str]
    X: np.ndarray
    y: Optional[np.ndarray] = None
    labels: Optional[np.ndarray] = None
    path: str = ""
    response: Optional[str] = None
    label: Optional[str] = None
    skipped: List[dict] = dataclasses.field(default_factory=list)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    def report(self) -> dict:
        return {"path": self.path, "rows": self.n, "columns": self.p, "skipped": len(self.skipped)}


def _number(cell: str, decimal: str) -> float:
    text = cell.strip()
    if text.lower() in MISSING:
        raise ValueError("missing value")
    decimal != "." and (text := text.replace(decimal, "."))
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("non-finite value")
    return value


def load_csv(
    path: str,
    delimiter: str = ",",
    decimal: str = ".",
    header: bool = True,
    response: Optional[str] = None,
    label: Optional[str] = None,
    columns: Optional[Sequence[str]] = None,
    encoding: str = "utf-8-sig",
) -> Dataset:
    """
    read a rectangular numeric table

    rows with a missing or non-numeric cell in a used column are dropped,
    logged and listed in ``skipped`` with the reason; the label column may
    hold any text

    :param header: first line holds column names, otherwise x1..xp
    :param response: column taken as y
    :param label: column taken as group labels
    :param columns: predictor columns, default every other column
    """
    if not os.path.isfile(path):
        raise DatasetIOError(f"cannot read {path}", path=path)
    with open(path, encoding=encoding, newline="") as f:
        rows = [r for r in csv.reader(f, delimiter=delimiter) if any(c.strip() for c in r)]
    if not rows or (header and len(rows) < 2):
        raise DatasetIOError(f"{path} holds no data rows", path=path)

    names = [c.strip() for c in rows[0]] if header else [f"x{j + 1}" for j in range(len(rows[0]))]
    body = rows[1:] if header else rows
    for name in filter(None, (response, label, *(columns or ()))):
        if name not in names:
            raise InputError(f"no column named {name!r}", column=name, columns=names)
    predictors = list(columns) if columns else [c for c in names if c not in (response, label)]
    x_index = [names.index(c) for c in predictors]
    y_index = names.index(response) if response else None
    l_index = names.index(label) if label else None

    X, y, labels, skipped = [], [], [], []
    for lineno, row in enumerate(body, start=2 if header else 1):
        if len(row) != len(names):
            skipped.append({"line": lineno, "reason": f"expected {len(names)} fields, got {len(row)}"})
            continue
        try:
            x = [_number(row[j], decimal) for j in x_index]
            value = _number(row[y_index], decimal) if y_index is not None else None
        except ValueError as e:
            skipped.append({"line": lineno, "reason": str(e)})
            continue
        X.append(x)
        value is not None and y.append(value)
        l_index is not None and labels.append(row[l_index].strip())

    for item in skipped:
        logger.warning(f"[load_csv] {path}:{item['line']} rejected: {item['reason']}")
    if not X:
        raise DatasetIOError(f"{path} has no usable rows", path=path, skipped=len(skipped))
    return Dataset(
        columns=predictors,
        X=np.array(X, dtype=float).reshape(len(X), len(predictors)),
        y=np.array(y) if response else None,
        labels=np.array(labels) if label else None,
        path=path,
        response=response,
        label=label,
        skipped=skipped,
    )


def save_rows(rows: Sequence[dict], path: str, delimiter: str = ",", header="inner") -> str:
    return Items(list(rows)).to_csv(path, header=header, delimiter=delimiter)


def dataset_rows(dataset: Dataset) -> list:
    ret = []
    for i, x in enumerate(dataset.X):
        row = dict(zip(dataset.columns, x))
        dataset.y is not None and row.update({dataset.response: dataset.y[i]})
        dataset.labels is not None and row.update({dataset.label: dataset.labels[i]})
        ret.append(row)
    return ret
