# -*- coding: utf-8 -*-
# @Time    : 2026-10-21 09:05
# @Author  : robricks
# @Desc    : small helpers shared by the command line layer
import ast
import contextlib
import inspect
import sys
import threading
from typing import Any, Callable

import better_exceptions

better_exceptions.MAX_LENGTH = None
exec_formatter = better_exceptions.ExceptionFormatter(
    colored=False,
    theme=better_exceptions.THEME,
    max_length=better_exceptions.MAX_LENGTH,
    pipe_char=better_exceptions.PIPE_CHAR,
    cap_char=better_exceptions.CAP_CHAR,
)


def guess(_object: Any) -> Any:
    """literal-evaluate strings, recursively; anything unparsable stays a string"""
    if isinstance(_object, dict):
        return {k: guess(v) for k, v in _object.items()}

    elif isinstance(_object, (list, tuple, set)):
        return _object.__class__([guess(i) for i in _object])

    elif isinstance(_object, str):
        try:
            return ast.literal_eval(_object)
        except:  # noqa
            return _object

    else:
        return _object


def parse_grid(text: str) -> list:
    """
    ``"1:10"`` -> 1..10, ``"1:10:2"`` -> 1, 3, .., 9, ``"0.1,0.5"`` -> [0.1, 0.5]
    """
    text = str(text).strip()
    if ":" in text:
        parts = [int(i) for i in text.split(":")]
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(start, stop + 1, step))
    return [guess(i.strip()) for i in text.split(",") if i.strip()]


def get_pretty_stack(e: Exception):
    """formatted stack of ``e``"""
    return "".join(list(exec_formatter.format_exception(e.__class__, e, e.__traceback__ or sys.exc_info()[2])))


def with_metaclass(singleton: bool = False, thread_safe: bool = True):
    """
    class decorator; ``singleton`` makes every call return the first instance
    """

    def outer(clazz):
        assert inspect.isclass(clazz), ValueError(f"clazz must be class, but got {type(clazz)}")

        _instance = {}
        _lock = threading.Lock() if thread_safe else contextlib.nullcontext()

        class CustomMeta(type):
            def __call__(cls, *args, **kwargs):
                if not singleton:
                    return type.__call__(cls, *args, **kwargs)
                with _lock:
                    if cls not in _instance:
                        _instance[cls] = type.__call__(cls, *args, **kwargs)
                    return _instance[cls]

        return CustomMeta(clazz.__name__, (clazz,), {})

    return outer


def invoke(func: Callable, kwargs: dict):
    """call ``func`` with the subset of ``kwargs`` it accepts"""
    params = inspect.signature(func).parameters
    if any(p.kind == p.VAR_KEYWORD for p in params.values()):
        return func(**kwargs)
    return func(**{k: v for k, v in kwargs.items() if k in params})
