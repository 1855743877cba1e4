# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 09:12
# @Author  : robricks
# @Desc    : robust multivariate statistics
import sys

from loguru import logger

from robricks.state import *  # noqa F403

__version__ = "0.1.0"

_FORMAT = "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <level>{level: <7}</level> | <cyan>{file}:{line}</cyan> - <level>{message}</level>"
_sink = {"id": None}


def set_level(level: str = "INFO"):
    """
    replace the stdout sink with one filtering at `level`

    :param level: loguru level name
    :return: the new handler id
    """
    if _sink["id"] is not None:
        try:
            logger.remove(_sink["id"])
        except ValueError:
            pass
    _sink["id"] = logger.add(
        sys.stdout,
        level=level,
        format=_FORMAT,
        colorize=True,
        backtrace=True,  # 异常时打印回溯信息
        diagnose=True,  # 更详细的诊断信息
    )
    return _sink["id"]


try:
    logger.remove(0)
except ValueError:
    pass

set_level(G.log_level)  # noqa F405

from robricks.core import events  # noqa E402


@events.on(const.AFTER_FIT, index=-1)  # noqa F405
def _log_fit(context):
    level = "DEBUG" if context.depth or events.muted.active else "INFO"
    summary = getattr(context.result, "summary", None)
    logger.log(level, f"[{context.target}] {summary() if summary else 'done'}")
