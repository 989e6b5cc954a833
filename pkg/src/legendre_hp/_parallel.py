"""Order-preserving fan-out for scans. Results never depend on the worker count:
work is split into contiguous chunks and chunk results are consumed in order."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_THREADS = "LEGENDRE_HP_THREADS"


def worker_count() -> int:
    cap = os.cpu_count() or 1
    raw = os.environ.get(ENV_THREADS)
    if raw:
        try:
            cap = max(1, min(cap, int(raw)))
        except ValueError:
            pass
    return cap


def _chunks(items: Sequence[T], n: int) -> list[Sequence[T]]:
    size = max(1, -(-len(items) // n))
    return [items[i : i + size] for i in range(0, len(items), size)]


def ordered_map(fn: Callable[[Sequence[T]], R], items: Sequence[T], chunks_per_worker: int = 4) -> list[R]:
    """fn applied to contiguous chunks of items; results in chunk order.

    fn must be a picklable module-level callable taking one chunk.
    """
    workers = worker_count()
    if workers <= 1 or len(items) < 2:
        return [fn(items)]
    parts = _chunks(items, workers * chunks_per_worker)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, parts))


def first_hit(fn: Callable[[Sequence[T]], int | None], items: Sequence[T], chunks_per_worker: int = 4) -> int | None:
    """Smallest global index i for which the chunk-level search fn reports a hit.

    fn(chunk) returns the index of the first hit inside the chunk, or None.
    """
    workers = worker_count()
    if workers <= 1 or len(items) < 2:
        return fn(items)
    parts = _chunks(items, workers * chunks_per_worker)
    offset = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, part) for part in parts]
        try:
            for part, fut in zip(parts, futures):
                hit = fut.result()
                if hit is not None:
                    return offset + hit
                offset += len(part)
        finally:
            for fut in futures:
                fut.cancel()
    return None
