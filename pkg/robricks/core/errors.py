# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 09:31
# @Author  : robricks
# @Desc    : exception family
__all__ = (
    "RobustError",
    "InputError",
    "ConvergenceError",
    "SingularityError",
    "DegenerateError",
    "DimensionalityError",
    "SparsityError",
    "UnsupportedError",
    "FitFailure",
    "UsageError",
)


class RobustError(Exception):
    """
    root of every error raised by robricks

    keyword arguments are kept as attributes so callers can recover
    partial results, e.g. ``ConvergenceError(last=beta, iterations=200)``
    """

    def __init__(self, message: str = "", **kwargs):
        self.message = message
        for k, v in kwargs.items():
            setattr(self, k, v)
        super().__init__(message)

    @property
    def payload(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if k != "message"}

    def __str__(self):
        keys = ", ".join(
            f"{k}={v!r}"
            for k, v in self.payload.items()
            if isinstance(v, (int, float, str, bool))
        )
        return f"<{self.__class__.__name__} {self.message}{' | ' + keys if keys else ''}>"


# 输入不合法
class InputError(RobustError, ValueError): ...


# 迭代未收敛, `last` 为最后一次迭代的结果
class ConvergenceError(RobustError):
    def __init__(self, message: str = "", last=None, iterations: int = 0, **kwargs):
        super().__init__(message, last=last, iterations=iterations, **kwargs)


class SingularityError(RobustError): ...


class DegenerateError(RobustError): ...


class DimensionalityError(RobustError, ValueError): ...


class SparsityError(RobustError): ...


class UnsupportedError(RobustError, ValueError): ...


# 重采样中失败比例过高
class FitFailure(RobustError): ...


class UsageError(RobustError): ...
