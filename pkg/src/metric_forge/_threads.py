"""Optional thread fan-out for grid sweeps.

METRIC_FORGE_THREADS caps the worker count; the default of 1 keeps
everything sequential.  Results always come back in input order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_cap() -> int:
    raw = os.environ.get("METRIC_FORGE_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(value, 1)


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    todo: Sequence[T] = list(items)
    cap = thread_cap()
    if cap <= 1 or len(todo) <= 1:
        return [fn(item) for item in todo]
    with ThreadPoolExecutor(max_workers=min(cap, len(todo))) as pool:
        return list(pool.map(fn, todo))
