"""Order-preserving process pool used by the census and pair checks."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_THREADS = "REVSYNTH_THREADS"


def worker_count(requested: int | None = None) -> int:
    """Requested count (default: CPU count) capped by ``REVSYNTH_THREADS``."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get(ENV_THREADS)
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def pmap(fn: Callable[[T], R], items: Iterable[T], workers: int = 1,
         initializer: Callable | None = None, initargs: tuple = ()) -> list[R]:
    items = list(items)
    if workers <= 1 or len(items) < 2:
        if initializer is not None:
            initializer(*initargs)
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers, initializer=initializer, initargs=initargs) as ex:
        chunk = max(1, len(items) // (workers * 4))
        return list(ex.map(fn, items, chunksize=chunk))
