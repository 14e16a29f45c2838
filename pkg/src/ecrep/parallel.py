"""Reproducible chunked reductions.

Items are cut into chunks whose boundaries depend only on ``chunk_size``,
each chunk is reduced sequentially, and chunk results are combined left to
right.  The floating-point result is therefore bit-identical for any number
of workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_CHUNK = 32


def chunks(items: Sequence[T], chunk_size: int = DEFAULT_CHUNK) -> list[Sequence[T]]:
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    return [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]


def ordered_map(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> list[R]:
    """``[fn(x) for x in items]``, optionally on a thread pool; order is preserved."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def chunked_sum(
    term: Callable[[T], R],
    items: Sequence[T],
    zero: R,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
) -> R:
    """Sum ``term(x)`` over ``items`` with a fixed reduction tree."""

    def reduce_chunk(chunk):
        acc = zero
        for x in chunk:
            acc = acc + term(x)
        return acc

    total = zero
    for part in ordered_map(reduce_chunk, chunks(items, chunk_size), workers):
        total = total + part
    return total
