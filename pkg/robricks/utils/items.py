# -*- coding: utf-8 -*-
# @Time    : 2026-10-21 09:30
# @Author  : robricks
# @Desc    : row tables written as csv
import csv
import os
from collections import UserList
from typing import Any, Optional, Union

import numpy as np

from robricks.state import const


def format_value(value: Any, digits: int = const.DIGITS) -> Any:
    """floats at ``digits`` significant digits, numpy scalars unwrapped"""
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return format(float(value), f".{digits}g")
    if isinstance(value, (list, tuple, np.ndarray)):
        return " ".join(str(format_value(v, digits)) for v in np.ravel(value))
    return "" if value is None else value


class Items(UserList):
    def __init__(self, data=None):
        if isinstance(data, dict):
            data = [data]

        super().__init__(initlist=data)

    def update(self, *args, **kwargs) -> None:
        for item in self.data:
            item.update(*args, **kwargs)

    def setdefault(self, __key, __default):
        for item in self.data:
            item.setdefault(__key, __default)

    @property
    def columns(self) -> list:
        # 按首次出现的顺序
        seen = {}
        for row in self.data:
            for key in row:
                seen.setdefault(key, None)
        return list(seen)

    def to_csv(
        self,
        path: str,
        header: Union[str, list, None] = "inner",
        mode: str = "w",
        delimiter: str = ",",
        digits: int = const.DIGITS,
        quoting: int = csv.QUOTE_MINIMAL,
        lineterminator: str = "\n",
        **kwargs,
    ):
        """
        write the rows to ``path``

        :param header: "inner" takes the columns in first-seen order, None writes no header, a list fixes the order
        :param mode: file mode, appending skips the header of a non-empty file
        :param delimiter: field separator
        :param digits: significant digits of every float
        :param kwargs: extra arguments of ``open``
        """
        kwargs.setdefault("encoding", "utf-8")
        kwargs.setdefault("newline", "")
        if header == "inner":
            header = self.columns
            write_header = True
        elif not header:
            header = self.columns
            write_header = False
        else:
            write_header = True

        dirname = os.path.dirname(path)
        if dirname and not os.path.exists(dirname):
            os.makedirs(dirname)

        with open(path, mode, **kwargs) as file:
            writer = csv.writer(file, delimiter=delimiter, quoting=quoting, lineterminator=lineterminator)
            write_header and not file.tell() and writer.writerow(header)
            writer.writerows(self._dict2list(header, digits))
        return path

    def _dict2list(self, orders: list, digits: Optional[int] = const.DIGITS):
        return [[format_value(i.get(k, None), digits) for k in orders] for i in self.data]

    def __repr__(self):
        return repr(self.data)
