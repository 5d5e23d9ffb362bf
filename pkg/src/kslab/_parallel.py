"""Deterministic ordered parallelism for independent runs.

KS_THREADS caps the worker count; results always merge in input order, so
parallel and serial execution produce identical output.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["worker_count", "ordered_map"]


def worker_count() -> int:
    raw = os.environ.get("KS_THREADS")
    if raw is not None:
        try:
            n = int(raw)
        except ValueError as exc:
            raise ValueError(f"KS_THREADS must be an integer, got {raw!r}") from exc
        if n < 1:
            raise ValueError(f"KS_THREADS must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def ordered_map(fn, items):
    """Map fn over items, possibly in parallel, preserving input order."""
    items = list(items)
    n = min(worker_count(), len(items))
    if n <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
