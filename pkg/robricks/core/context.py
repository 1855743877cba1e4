# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 09:40
# @Author  : robricks
# @Desc    : event payloads
from typing import Any

from robricks.state import const


class Context:
    """
    payload handed to every event callback

    :param form: event type, one of the ``const`` event names
    :param target: estimator id (``"mcd"``, ``"mm"`` ...), ``None`` means global
    :param kwargs: anything the emitter wants to expose, kept as attributes
    """

    def __init__(self, form: str, target: Any = None, **kwargs) -> None:
        self.form = form
        self.target = target
        for k, v in kwargs.items():
            setattr(self, k, v)

    def __repr__(self):
        return f"<Context form={self.form} target={self.target}>"


class Error(Context):
    def __init__(self, error: Exception, context: Context = None, **kwargs) -> None:
        super().__init__(
            form=const.ERROR_OCCURRED,
            target=context and context.target,
            context=context,
            **kwargs,
        )
        self.error = error
        self.context = context
