"""Index-range fan-out over worker processes with an order-preserving merge."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, TypeVar

T = TypeVar("T")


def chunk_ranges(count: int, chunk: int) -> list[tuple[int, int]]:
    return [(s, min(s + chunk, count)) for s in range(0, count, chunk)]


def map_ranges(
    fn: Callable[..., T],
    count: int,
    *args,
    workers: int = 1,
    chunk: int = 1000,
) -> list[T]:
    """Call ``fn(*args, start, stop)`` over consecutive index ranges.

    Results come back in range order regardless of ``workers``, so any
    associative merge of them is independent of the worker count. ``fn`` must
    be a module-level function when ``workers > 1``.
    """
    ranges = chunk_ranges(count, chunk)
    if workers <= 1 or len(ranges) <= 1:
        return [fn(*args, s, e) for s, e in ranges]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futures = [ex.submit(fn, *args, s, e) for s, e in ranges]
        return [f.result() for f in futures]
