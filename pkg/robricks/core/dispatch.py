# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 09:52
# @Author  : robricks
# @Desc    : task distribution for resampling loops
__all__ = ("Dispatcher", "Job", "Worker")

import queue
import threading
from concurrent.futures import Future
from typing import Any, Callable, Iterable, List, Optional

from loguru import logger

from robricks.core import context, events
from robricks.state import G

# 队列里的哨兵, 收到就退出
_STOP = object()


class Job(Future):
    """
    one unit of a resampling loop: ``func(item)`` plus the slot its result goes to
    """

    def __init__(self, func: Callable, item: Any, slot: int):
        super().__init__()
        self.func = func
        self.item = item
        self.slot = slot
        self.worker: Optional[str] = None

    def execute(self):
        if not self.set_running_or_notify_cancel():
            return
        try:
            value = self.func(self.item)
        except (KeyboardInterrupt, SystemExit):
            raise
        except Exception as e:
            self.set_exception(e)
            events.EventManager.invoke(context.Error(error=e, slot=self.slot), errors="output")
        else:
            self.set_result(value)


class Worker(threading.Thread):
    def __init__(self, inbox: queue.Queue, name: str):
        super().__init__(daemon=True, name=name)
        self.inbox = inbox

    def run(self) -> None:
        while True:
            job = self.inbox.get()
            try:
                if job is _STOP:
                    return
                job.worker = self.name
                job.execute()
            finally:
                self.inbox.task_done()


class Dispatcher:
    """
    Dispatcher: a fixed pool of worker threads fed by one queue

    numpy releases the GIL inside BLAS/LAPACK calls, so threads pay off for the
    per-subsample and per-replicate fits. With ``max_workers <= 1`` every job
    runs inline on the caller's thread.

    results never depend on the worker count: callers derive one random stream
    per job index (see ``robricks.lib.streams``) and ``map`` keeps input order.
    """

    def __init__(self, max_workers: int = None):
        self.max_workers = G.threads if max_workers is None else max_workers
        self.inbox: queue.Queue = queue.Queue()
        self.pool: List[Worker] = []
        self._lock = threading.Lock()
        self._open = False

    @property
    def inline(self) -> bool:
        return self.max_workers <= 1

    @property
    def running(self) -> bool:
        return self._open

    def start(self):
        with self._lock:
            if not self._open:
                self._open = True
                if not self.inline:
                    self.pool = [Worker(self.inbox, f"Worker-{i}") for i in range(self.max_workers)]
                    for worker in self.pool:
                        worker.start()
        return self

    def stop(self):
        with self._lock:
            if not self._open:
                return
            for _ in self.pool:
                self.inbox.put(_STOP)
            for worker in self.pool:
                worker.join()
            self.pool = []
            self._open = False

    def submit(self, job: Job) -> Job:
        if not self._open:
            raise RuntimeError("dispatcher is not running")
        if self.inline:
            job.execute()
        else:
            self.inbox.put(job)
        return job

    def map(self, func: Callable, items: Iterable, return_exceptions=False) -> List:
        """
        run ``func(item)`` for every item, results in input order

        :param func: callable with one positional argument
        :param items: iterable of arguments
        :param return_exceptions: hand back raised exceptions as results instead of re-raising the first one
        :return:
        """
        owned = not self._open
        owned and self.start()
        try:
            jobs = [self.submit(Job(func, item, slot)) for slot, item in enumerate(items)]
            out = []
            for job in jobs:
                error = job.exception()
                if error is None:
                    out.append(job.result())
                elif return_exceptions:
                    out.append(error)
                else:
                    raise error
            logger.debug(f"[dispatch] {len(jobs)} jobs on {max(self.max_workers, 1)} workers")
            return out
        finally:
            owned and self.stop()

    def __enter__(self):
        return self.start()

    def __exit__(self, *exc):
        self.stop()
