# -*- coding: utf-8 -*-
# @Time    : 2026-10-22 09:05
# @Author  : robricks
# @Desc    : errors, events, dispatcher, random streams and cli helpers
import threading

import numpy as np
import pytest

from robricks.core import events
from robricks.core.context import Context
from robricks.core.dispatch import Dispatcher
from robricks.core.errors import ConvergenceError, InputError, RobustError
from robricks.lib import streams
from robricks.state import G, const
from robricks.utils import pandora


def test_error_keeps_payload():
    e = ConvergenceError("stuck", last=[1, 2], iterations=7, method="m")
    assert e.last == [1, 2]
    assert e.iterations == 7
    assert "ConvergenceError" in str(e) and "iterations=7" in str(e)
    assert isinstance(InputError("x"), ValueError)
    assert isinstance(e, RobustError)


def test_event_callbacks_run_in_index_order():
    seen = []
    regs = events.EventManager.register(
        Context(form=const.BEFORE_FIT, target="toy"),
        events.Task(func=lambda ctx: seen.append("second"), index=2),
        events.Task(func=lambda ctx: seen.append("first"), index=1),
    )
    try:
        events.emit(const.BEFORE_FIT, "toy")
        assert seen == ["first", "second"]
    finally:
        for r in regs:
            r.unregister()
    events.emit(const.BEFORE_FIT, "toy")
    assert seen == ["first", "second"]


def test_fitting_wrapper_reports_errors():
    errors = []
    reg = events.EventManager.register(
        Context(form=const.ERROR_OCCURRED, target="boom"),
        events.Task(func=lambda ctx: errors.append(ctx.error)),
    )

    @events.fitting("boom")
    def fit():
        raise InputError("bad")

    try:
        with pytest.raises(InputError):
            fit()
        assert len(errors) == 1 and isinstance(errors[0], InputError)
    finally:
        reg[0].unregister()


def test_on_decorator_fires_on_every_emit():
    seen = []

    @events.on(const.AFTER_FIT, target="toy-on")
    def record(ctx):
        seen.append(ctx.result)

    try:
        events.emit(const.AFTER_FIT, "toy-on", result=1, depth=1)
        events.emit(const.AFTER_FIT, "toy-on", result=2, depth=1)
        events.emit(const.AFTER_FIT, "other", result=3, depth=1)
        assert seen == [1, 2]
    finally:
        box = events.REGISTERED_EVENTS.events[const.AFTER_FIT]["toy-on"]
        box[:] = [task for task in box if task.func is not record]
    events.emit(const.AFTER_FIT, "toy-on", result=4, depth=1)
    assert seen == [1, 2]


def test_dispatcher_map_keeps_order_and_threads():
    names = set()

    def square(i):
        names.add(threading.current_thread().name)
        return i * i

    assert Dispatcher(4).map(square, range(50)) == [i * i for i in range(50)]
    assert Dispatcher(1).map(square, range(5)) == [0, 1, 4, 9, 16]


def test_dispatcher_returns_exceptions():
    def f(i):
        if i == 2:
            raise InputError("two")
        return i

    out = Dispatcher(3).map(f, range(4), return_exceptions=True)
    assert out[:2] == [0, 1] and out[3] == 3
    assert isinstance(out[2], InputError)
    with pytest.raises(InputError):
        Dispatcher(3).map(f, range(4))


def test_streams_do_not_depend_on_threads():
    def draw(i):
        return streams.stream(11, i).normal(size=3)

    a = np.array(Dispatcher(1).map(draw, range(20)))
    b = np.array(Dispatcher(5).map(draw, range(20)))
    assert np.array_equal(a, b)
    assert not np.array_equal(a[0], a[1])


def test_resolve_seed_defaults_to_settings():
    assert streams.resolve_seed(None) == G.seed
    assert streams.resolve_seed(5) == 5


def test_pandora_helpers():
    assert pandora.parse_grid("1:5") == [1, 2, 3, 4, 5]
    assert pandora.parse_grid("1:9:4") == [1, 5, 9]
    assert pandora.parse_grid("0.1, 0.5") == [0.1, 0.5]
    assert pandora.guess({"a": "3", "b": ["0.5", "mcd"]}) == {"a": 3, "b": [0.5, "mcd"]}

    def fit(X, k=1):
        return X, k

    assert pandora.invoke(fit, {"X": 0, "k": 2, "seed": 5}) == (0, 2)
