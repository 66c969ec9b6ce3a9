"""Ordered first-hit search over independent tasks.

Tasks are ordered; the winner is the first task (in that order) whose
result is not None, regardless of which worker finishes first.  Counters
are merged only over the tasks a sequential scan would have run, so the
statistics are identical for any worker count.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from .lpcore import Counter


def first_hit(fn, tasks, workers: int = 1, counter: Counter | None = None):
    """Return ``(index, result)`` of the first task with a non-None result.

    ``fn(task)`` must return ``(result, Counter)`` and be picklable when
    ``workers > 1``.  Returns ``(None, None)`` if every task yields None.
    """
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        for i, task in enumerate(tasks):
            result, work = fn(task)
            if counter is not None:
                counter.merge(work)
            if result is not None:
                return i, result
        return None, None

    with ProcessPoolExecutor(max_workers=workers) as pool:
        window = {}
        nxt = 0
        try:
            for i in range(len(tasks)):
                while nxt < len(tasks) and nxt < i + 2 * workers:
                    window[nxt] = pool.submit(fn, tasks[nxt])
                    nxt += 1
                result, work = window.pop(i).result()
                if counter is not None:
                    counter.merge(work)
                if result is not None:
                    return i, result
        finally:
            for fut in window.values():
                fut.cancel()
    return None, None
