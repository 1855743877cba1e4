# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 09:44
# @Author  : robricks
# @Desc    : fit lifecycle events
import collections
import dataclasses
import functools
import itertools
import threading
from typing import Any, Callable, Dict, List, Literal, Optional

from loguru import logger

from robricks.core.context import Context, Error
from robricks.state import const


@dataclasses.dataclass
class Task:
    func: Callable
    index: Optional[int] = None


@dataclasses.dataclass
class Register:
    task: Task
    form: str
    target: Any = None

    def unregister(self):
        EventManager.unregister(self)


class RegisteredEvents:
    def __init__(self):
        # form -> target -> [Task]
        self.events: Dict[str, Dict[Any, List[Task]]] = collections.defaultdict(
            lambda: collections.defaultdict(list)
        )
        self.lock = threading.RLock()

    def clear(self):
        with self.lock:
            self.events.clear()


class EventManager:
    counter = collections.defaultdict(itertools.count)

    @classmethod
    def acquire(cls, context: Context):
        targets = [None] if context.target is None else [None, context.target]
        with REGISTERED_EVENTS.lock:
            group = REGISTERED_EVENTS.events[context.form]
            events = [e for t in targets for e in group.get(t, [])]

        yield from sorted(events, key=lambda x: x.index)

    @classmethod
    def invoke(
        cls,
        context: Context,
        errors: Literal["raise", "ignore", "output"] = "raise",
    ):
        """
        trigger every callback registered for ``context.form``

        :param context: event payload
        :param errors: what to do when a callback raises
        :return: list of callback results
        """
        ret = []
        for event in cls.acquire(context):
            try:
                ret.append(event.func(context))
            except Exception as e:
                if errors == "raise":
                    raise
                elif errors == "output":
                    logger.exception(e)
        return ret

    @classmethod
    def register(cls, context: Context, *events: Task) -> List[Register]:
        ret = []
        with REGISTERED_EVENTS.lock:
            for event in events:
                if isinstance(event, dict):
                    event = Task(**event)

                if event.index is None:
                    event.index = next(cls.counter[f"{context.target}.{context.form}"])
                REGISTERED_EVENTS.events[context.form][context.target].append(event)
                ret.append(Register(task=event, form=context.form, target=context.target))

        return ret

    @classmethod
    def unregister(cls, register: Register):
        with REGISTERED_EVENTS.lock:
            box = REGISTERED_EVENTS.events[register.form][register.target]
            register.task in box and box.remove(register.task)


def on(form: str, target: Any = None, index: int = None):
    """
    register ``func`` as a callback through a decorator

    :param form: event type, use the ``const`` names
    :param target: estimator id the callback is bound to, ``None`` listens to all
    :param index: ordering, smaller runs first
    """

    def inner(func):
        EventManager.register(
            Context(form=form, target=target),
            Task(func=func, index=index),
        )
        return func

    return inner


def emit(form: str, target: Any = None, **kwargs) -> list:
    """shortcut used by estimators: build the context and invoke with errors logged"""
    return EventManager.invoke(Context(form, target=target, **kwargs), errors="output")


# 已注册事件
REGISTERED_EVENTS = RegisteredEvents()


class _Muted:
    """process-wide switch used by resampling loops to push fit logs down to DEBUG"""

    def __init__(self):
        self.depth = 0
        self.lock = threading.Lock()

    def __enter__(self):
        with self.lock:
            self.depth += 1
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        with self.lock:
            self.depth -= 1

    @property
    def active(self) -> bool:
        return self.depth > 0


muted = _Muted()
_nesting = threading.local()


def fitting(target: str):
    """
    wrap an estimator so it emits BEFORE_FIT / AFTER_FIT / ERROR_OCCURRED

    ``context.depth`` is 0 for the outermost fit of the current thread
    """
    def outer(func):
        @functools.wraps(func)
        def inner(*args, **kwargs):
            depth = getattr(_nesting, "depth", 0)
            _nesting.depth = depth + 1
            try:
                emit(const.BEFORE_FIT, target, depth=depth, kwargs=kwargs)
                try:
                    ret = func(*args, **kwargs)
                except Exception as e:
                    EventManager.invoke(
                        Error(e, Context(const.ERROR_OCCURRED, target=target), depth=depth),
                        errors="output",
                    )
                    raise
                emit(const.AFTER_FIT, target, depth=depth, result=ret)
                return ret
            finally:
                _nesting.depth = depth

        return inner

    return outer
