from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_VAR = "WREATH_FUSION_THREADS"


def max_workers() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def chunked_map(func: Callable[[Sequence[T]], R], items: Sequence[T], min_chunk: int = 256) -> list[R]:
    """Apply ``func`` to consecutive chunks of ``items``; results keep chunk order."""
    workers = max_workers()
    if workers == 1 or len(items) <= min_chunk:
        return [func(items)]
    size = max(min_chunk, -(-len(items) // workers))
    chunks = [items[i : i + size] for i in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, chunks))
